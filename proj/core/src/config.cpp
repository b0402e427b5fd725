#include "relaxns/config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>

#include "json.hpp"
#include "relaxns/errors.hpp"
#include "relaxns/manufactured.hpp"

namespace relaxns {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

void reject_unknown(const json& obj, std::initializer_list<std::string_view> allowed,
                    const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + ": expected a JSON object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (std::string_view k : allowed) known = known || it.key() == k;
    if (!known) throw ConfigError(where + ": unknown key '" + it.key() + "'");
  }
}

double get_number(const json& obj, const char* key, double fallback, const std::string& where) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number()) throw ConfigError(where + "." + key + ": expected a number");
  return v.get<double>();
}

std::uint64_t get_unsigned(const json& obj, const char* key, std::uint64_t fallback,
                           const std::string& where) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_unsigned()) {
    throw ConfigError(where + "." + key + ": expected a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

std::string get_string(const json& obj, const char* key, const std::string& fallback,
                       const std::string& where) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_string()) throw ConfigError(where + "." + key + ": expected a string");
  return v.get<std::string>();
}

} // namespace

SolverKind parse_solver_kind(std::string_view name) {
  if (name == "relaxed") return SolverKind::relaxed;
  if (name == "parabolic") return SolverKind::parabolic;
  throw ConfigError("unknown solver '" + std::string(name) + "'");
}

const char* to_string(SolverKind kind) {
  return kind == SolverKind::relaxed ? "relaxed" : "parabolic";
}

ForcingKind parse_forcing_kind(std::string_view name) {
  if (name == "none") return ForcingKind::none;
  if (name == "mms") return ForcingKind::mms;
  throw ConfigError("unknown forcing '" + std::string(name) + "'");
}

const char* to_string(ForcingKind kind) { return kind == ForcingKind::none ? "none" : "mms"; }

void RunConfig::validate() const {
  if (n < Grid1D::kMinNodes) {
    throw ConfigError("n must be at least " + std::to_string(Grid1D::kMinNodes));
  }
  if (!(t_end > 0.0) || !std::isfinite(t_end)) throw ConfigError("t_end must be > 0");
  if (solver == SolverKind::relaxed && !(params.tau() > 0.0)) {
    throw ConfigError("the relaxed solver needs tau > 0; use solver \"parabolic\" for tau = 0");
  }
  if (!(ic.delta >= 0.0)) throw ConfigError("ic.delta must be >= 0");
  if (ic.family == IcFamily::custom_table && ic.path.empty()) {
    throw ConfigError("ic.path is required for the custom-table family");
  }
  SchemeConfig sc;
  sc.cfl = cfl;
  sc.v_floor = v_floor;
  sc.record_interval = record_interval;
  sc.validate();
}

RunConfig parse_run_config(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text.begin(), json_text.end());
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
  reject_unknown(root,
                 {"solver", "params", "n", "t_end", "cfl", "record_every", "record_interval",
                  "energy_every", "v_floor", "ic", "forcing", "seed", "output_dir"},
                 "config");

  RunConfig cfg;
  cfg.solver = parse_solver_kind(get_string(root, "solver", to_string(cfg.solver), "config"));

  if (root.contains("params")) {
    const json& p = root.at("params");
    reject_unknown(p, {"a", "gamma", "mu", "tau", "epsilon"}, "config.params");
    const FluidParams& d = cfg.params;
    cfg.params = FluidParams(get_number(p, "a", d.a(), "config.params"),
                             get_number(p, "gamma", d.gamma(), "config.params"),
                             get_number(p, "mu", d.mu(), "config.params"),
                             get_number(p, "tau", d.tau(), "config.params"),
                             get_number(p, "epsilon", d.epsilon(), "config.params"));
  }

  cfg.n = get_unsigned(root, "n", cfg.n, "config");
  cfg.t_end = get_number(root, "t_end", cfg.t_end, "config");
  cfg.cfl = get_number(root, "cfl", cfg.cfl, "config");
  cfg.record_every = get_unsigned(root, "record_every", cfg.record_every, "config");
  cfg.record_interval = get_number(root, "record_interval", cfg.record_interval, "config");
  cfg.energy_every = get_unsigned(root, "energy_every", cfg.energy_every, "config");
  cfg.v_floor = get_number(root, "v_floor", cfg.v_floor, "config");

  if (root.contains("ic")) {
    const json& ic = root.at("ic");
    reject_unknown(ic, {"family", "delta", "path"}, "config.ic");
    cfg.ic.family = parse_ic_family(get_string(ic, "family", to_string(cfg.ic.family), "config.ic"));
    cfg.ic.delta = get_number(ic, "delta", cfg.ic.delta, "config.ic");
    cfg.ic.path = get_string(ic, "path", cfg.ic.path, "config.ic");
  }

  cfg.forcing = parse_forcing_kind(get_string(root, "forcing", to_string(cfg.forcing), "config"));
  cfg.seed = get_unsigned(root, "seed", cfg.seed, "config");
  cfg.output_dir = get_string(root, "output_dir", cfg.output_dir, "config");

  cfg.validate();
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_run_config(text.str());
}

std::string to_json(const RunConfig& cfg) {
  ordered_json j;
  j["solver"] = to_string(cfg.solver);
  j["params"] = {{"a", cfg.params.a()},
                 {"gamma", cfg.params.gamma()},
                 {"mu", cfg.params.mu()},
                 {"tau", cfg.params.tau()},
                 {"epsilon", cfg.params.epsilon()}};
  j["n"] = cfg.n;
  j["t_end"] = cfg.t_end;
  j["cfl"] = cfg.cfl;
  j["record_every"] = cfg.record_every;
  j["record_interval"] = cfg.record_interval;
  j["energy_every"] = cfg.energy_every;
  j["v_floor"] = cfg.v_floor;
  j["ic"] = {{"family", to_string(cfg.ic.family)}, {"delta", cfg.ic.delta}, {"path", cfg.ic.path}};
  j["forcing"] = to_string(cfg.forcing);
  j["seed"] = cfg.seed;
  j["output_dir"] = cfg.output_dir;
  return j.dump(2);
}

SchemeConfig scheme_config(const RunConfig& cfg, const Grid1D& grid) {
  SchemeConfig sc;
  sc.cfl = cfg.cfl;
  sc.v_floor = cfg.v_floor;
  sc.record_every = cfg.record_every;
  sc.record_interval = cfg.record_interval;
  sc.energy_every = cfg.energy_every;
  if (cfg.forcing == ForcingKind::mms) {
    const ManufacturedSolution mms(cfg.params);
    sc.forcing = cfg.solver == SolverKind::relaxed ? mms.relaxed_forcing(grid)
                                                   : mms.parabolic_forcing(grid);
  }
  return sc;
}

} // namespace relaxns
