#include <gtest/gtest.h>

#include <cmath>

#include "relaxns/svg.hpp"

using namespace relaxns;

namespace {

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (std::size_t pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) {
    ++n;
  }
  return n;
}

} // namespace

TEST(Svg, OnePolylinePerSeries) {
  PlotSpec spec;
  spec.title = "energy <test>";
  spec.series = {{"a", {0, 1, 2}, {1, 2, 3}}, {"b", {0, 1, 2}, {3, 2, 1}}};
  const std::string svg = render_svg(spec);
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
  EXPECT_EQ(count(svg, "<polyline"), 2u);
  EXPECT_NE(svg.find("energy &lt;test&gt;"), std::string::npos);
}

TEST(Svg, LogAxesSkipUnusablePoints) {
  PlotSpec spec;
  spec.log_x = spec.log_y = true;
  spec.markers = true;
  spec.series = {{"err", {1e-3, 1e-2, 0.0, 1e-1}, {1e-6, 1e-4, 1.0, std::nan("")}}};
  const std::string svg = render_svg(spec);
  EXPECT_EQ(count(svg, "<circle"), 2u);
  EXPECT_EQ(svg.find("nan"), std::string::npos);
  EXPECT_EQ(svg.find("inf"), std::string::npos);
}

TEST(Svg, EmptyPlotStillRenders) {
  const std::string svg = render_svg(PlotSpec{});
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
}
