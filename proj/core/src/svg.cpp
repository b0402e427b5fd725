#include "relaxns/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "relaxns/errors.hpp"

namespace relaxns {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 460.0;
constexpr double kLeft = 90.0;
constexpr double kRight = 170.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

constexpr std::array<const char*, 8> kPalette = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                                 "#9467bd", "#8c564b", "#e377c2", "#17becf"};

struct Axis {
  double lo = 0.0;
  double hi = 1.0;
  bool log = false;

  double transform(double v) const { return log ? std::log10(v) : v; }
  // fraction along the axis
  double frac(double v) const { return (transform(v) - lo) / (hi - lo); }
};

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string fmt(double v, const char* pattern = "%.2f") {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

std::string tick_label(double v) {
  if (v == 0.0) return "0";
  const double a = std::abs(v);
  if (a >= 1e-3 && a < 1e4) return fmt(v, "%g");
  return fmt(v, "%.1e");
}

bool usable(double v, bool log) { return std::isfinite(v) && (!log || v > 0.0); }

Axis make_axis(const PlotSpec& spec, bool horizontal) {
  const bool log = horizontal ? spec.log_x : spec.log_y;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const PlotSeries& s : spec.series) {
    const std::vector<double>& vals = horizontal ? s.x : s.y;
    const std::size_t n = std::min(s.x.size(), s.y.size());
    for (std::size_t i = 0; i < n; ++i) {
      if (!usable(s.x[i], spec.log_x) || !usable(s.y[i], spec.log_y)) continue;
      const double t = log ? std::log10(vals[i]) : vals[i];
      lo = std::min(lo, t);
      hi = std::max(hi, t);
    }
  }
  Axis ax;
  ax.log = log;
  if (!std::isfinite(lo)) return ax;
  if (log) {
    ax.lo = std::floor(lo);
    ax.hi = std::ceil(hi);
    if (ax.hi == ax.lo) ax.hi = ax.lo + 1.0;
  } else {
    const double pad = hi > lo ? 0.05 * (hi - lo) : (lo == 0.0 ? 1.0 : 0.05 * std::abs(lo));
    ax.lo = lo - pad;
    ax.hi = hi + pad;
  }
  return ax;
}

std::vector<double> ticks(const Axis& ax) {
  std::vector<double> out;
  if (ax.log) {
    const int first = static_cast<int>(ax.lo), last = static_cast<int>(ax.hi);
    const int stride = std::max(1, (last - first) / 8);
    for (int e = first; e <= last; e += stride) out.push_back(std::pow(10.0, e));
    return out;
  }
  const double raw = (ax.hi - ax.lo) / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {2.0, 5.0, 10.0}) {
    if (step < raw) step = m * mag;
  }
  for (double v = std::ceil(ax.lo / step) * step; v <= ax.hi + 1e-9 * step; v += step) {
    out.push_back(std::abs(v) < 1e-12 * step ? 0.0 : v);
  }
  return out;
}

} // namespace

std::string render_svg(const PlotSpec& spec) {
  const Axis xa = make_axis(spec, true);
  const Axis ya = make_axis(spec, false);
  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + xa.frac(x) * pw; };
  auto py = [&](double y) { return kTop + (1.0 - ya.frac(y)) * ph; };

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
    << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight
    << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << kLeft + pw / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
    << escape(spec.title) << "</text>\n";

  for (double t : ticks(xa)) {
    const double x = px(t);
    o << "<line x1=\"" << fmt(x) << "\" y1=\"" << kTop << "\" x2=\"" << fmt(x) << "\" y2=\""
      << kTop + ph << "\" stroke=\"#e5e5e5\"/>\n";
    o << "<text x=\"" << fmt(x) << "\" y=\"" << kTop + ph + 18
      << "\" text-anchor=\"middle\">" << tick_label(t) << "</text>\n";
  }
  for (double t : ticks(ya)) {
    const double y = py(t);
    o << "<line x1=\"" << kLeft << "\" y1=\"" << fmt(y) << "\" x2=\"" << kLeft + pw << "\" y2=\""
      << fmt(y) << "\" stroke=\"#e5e5e5\"/>\n";
    o << "<text x=\"" << kLeft - 6 << "\" y=\"" << fmt(y + 4) << "\" text-anchor=\"end\">"
      << tick_label(t) << "</text>\n";
  }
  o << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
    << "\" fill=\"none\" stroke=\"black\"/>\n";
  o << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 18
    << "\" text-anchor=\"middle\">" << escape(spec.x_label) << "</text>\n";
  o << "<text transform=\"translate(22," << kTop + ph / 2
    << ") rotate(-90)\" text-anchor=\"middle\">" << escape(spec.y_label) << "</text>\n";

  for (std::size_t k = 0; k < spec.series.size(); ++k) {
    const PlotSeries& s = spec.series[k];
    const char* colour = kPalette[k % kPalette.size()];
    std::ostringstream pts;
    const std::size_t n = std::min(s.x.size(), s.y.size());
    std::vector<std::pair<double, double>> marks;
    for (std::size_t i = 0; i < n; ++i) {
      if (!usable(s.x[i], spec.log_x) || !usable(s.y[i], spec.log_y)) continue;
      pts << fmt(px(s.x[i])) << ',' << fmt(py(s.y[i])) << ' ';
      marks.emplace_back(px(s.x[i]), py(s.y[i]));
    }
    o << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\" points=\""
      << pts.str() << "\"/>\n";
    if (spec.markers) {
      for (const auto& [mx, my] : marks) {
        o << "<circle cx=\"" << fmt(mx) << "\" cy=\"" << fmt(my) << "\" r=\"3\" fill=\"" << colour
          << "\"/>\n";
      }
    }
    const double ly = kTop + 16.0 + 18.0 * static_cast<double>(k);
    o << "<line x1=\"" << kLeft + pw + 12 << "\" y1=\"" << ly - 4 << "\" x2=\"" << kLeft + pw + 32
      << "\" y2=\"" << ly - 4 << "\" stroke=\"" << colour << "\" stroke-width=\"2\"/>\n";
    o << "<text x=\"" << kLeft + pw + 38 << "\" y=\"" << ly << "\">" << escape(s.label)
      << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

void write_svg(const PlotSpec& spec, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << render_svg(spec);
}

} // namespace relaxns
