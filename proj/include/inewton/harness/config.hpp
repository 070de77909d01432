#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "inewton/error.hpp"
#include "inewton/forcing/strategy.hpp"
#include "inewton/krylov/gmres.hpp"
#include "inewton/newton/solver.hpp"
#include "inewton/timestepping/transient.hpp"

namespace inewton::harness {

using json = nlohmann::json;

/// Problem name plus numeric parameters, every parameter filled in.
struct ProblemSpec {
  std::string name;
  std::map<std::string, double> params;
  /// Label used in the `case` column.
  std::string case_name;

  [[nodiscard]] bool transient() const { return name == "twophase1d"; }
  [[nodiscard]] double param(const std::string& key) const { return params.at(key); }
};

/// Solver settings for one problem after defaults and overrides.
struct RunSettings {
  ForcingConfig forcing;
  NewtonConfig newton;
  KrylovConfig krylov;
  TransientConfig transient;
};

struct ExperimentConfig {
  std::vector<ProblemSpec> problems;
  std::vector<StrategyKind> strategies;
  /// Override objects exactly as given; validated at parse time.
  json forcing = json::object();
  json newton = json::object();
  json krylov = json::object();
  json transient = json::object();
  std::string output_dir = "out";
  std::uint64_t seed = 1;
  /// Fill the ms column with wall time. Off by default so the CSV is reproducible.
  bool timing = false;
};

/// Known problems and their parameter defaults.
inline const std::map<std::string, std::map<std::string, double>>& problem_catalogue() {
  static const std::map<std::string, std::map<std::string, double>> cat{
      {"bratu2d", {{"n", 16.0}, {"lambda", 2.0}}},
      {"heq", {{"n", 100.0}, {"c", 0.9}}},
      {"twophase1d",
       {{"cells", 100.0},
        {"velocity", 1.0},
        {"mobility_ratio", 2.0},
        {"injection_fraction", 1.0},
        {"initial_saturation", 0.0}}},
      {"affine", {{"n", 20.0}}},
  };
  return cat;
}

inline std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

/// "bratu2d[lambda=2;n=16]"; no commas so the label is CSV-safe.
inline std::string default_case_name(const std::string& name, const std::map<std::string, double>& params) {
  std::string out = name + "[";
  bool first = true;
  for (const auto& [k, v] : params) {
    if (!first) out += ";";
    first = false;
    out += k + "=" + format_number(v);
  }
  return out + "]";
}

/// Builds a ProblemSpec, filling defaults and rejecting unknown parameters.
inline ProblemSpec make_problem_spec(const std::string& name, const std::map<std::string, double>& given,
                                     const std::string& case_name = "") {
  const auto& cat = problem_catalogue();
  const auto it = cat.find(name);
  if (it == cat.end()) throw ConfigError("unknown problem '" + name + "'");
  ProblemSpec spec;
  spec.name = name;
  spec.params = it->second;
  for (const auto& [k, v] : given) {
    if (!spec.params.contains(k)) throw ConfigError("problem '" + name + "' has no parameter '" + k + "'");
    spec.params[k] = v;
  }
  spec.case_name = case_name.empty() ? default_case_name(name, spec.params) : case_name;
  return spec;
}

/// Parses "name" or "name:key=value,key=value".
inline ProblemSpec parse_problem_string(const std::string& text) {
  const auto colon = text.find(':');
  const std::string name = text.substr(0, colon);
  std::map<std::string, double> given;
  if (colon != std::string::npos) {
    std::stringstream ss(text.substr(colon + 1));
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos || eq == 0) throw ConfigError("malformed problem parameter '" + item + "'");
      const std::string key = item.substr(0, eq);
      const std::string val = item.substr(eq + 1);
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(val, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != val.size()) throw ConfigError("problem parameter '" + key + "' is not a number");
      given[key] = v;
    }
  }
  return make_problem_spec(name, given);
}

namespace detail {

/// Error reporting with the line of a key in the source text.
class Diagnostics {
 public:
  Diagnostics(std::string text, std::string source) : text_(std::move(text)), source_(std::move(source)) {}

  /// Line (1-based) of the first `"key" :` occurrence, 0 when absent.
  [[nodiscard]] int line_of(const std::string& key) const {
    const std::string quoted = "\"" + key + "\"";
    std::size_t pos = 0;
    while ((pos = text_.find(quoted, pos)) != std::string::npos) {
      std::size_t after = pos + quoted.size();
      while (after < text_.size() && std::isspace(static_cast<unsigned char>(text_[after]))) ++after;
      if (after < text_.size() && text_[after] == ':') {
        return 1 + static_cast<int>(std::count(text_.begin(), text_.begin() + static_cast<std::ptrdiff_t>(pos), '\n'));
      }
      pos = after;
    }
    return 0;
  }

  [[noreturn]] void fail(const std::string& key, const std::string& msg) const {
    const int line = key.empty() ? 0 : line_of(key);
    std::string where = source_;
    if (line > 0) where += ":" + std::to_string(line);
    throw ConfigError(where + ": " + msg);
  }

 private:
  std::string text_;
  std::string source_;
};

inline void check_keys(const Diagnostics& d, const json& obj, const std::set<std::string>& allowed,
                       const std::string& section) {
  for (const auto& [k, v] : obj.items()) {
    if (!allowed.contains(k)) d.fail(k, "unknown key '" + k + "' in " + section);
  }
}

inline double get_number(const Diagnostics& d, const json& obj, const std::string& key) {
  const json& v = obj.at(key);
  if (!v.is_number()) d.fail(key, "'" + key + "' must be a number");
  return v.get<double>();
}

inline int get_int(const Diagnostics& d, const json& obj, const std::string& key) {
  const json& v = obj.at(key);
  if (!v.is_number_integer()) d.fail(key, "'" + key + "' must be an integer");
  return v.get<int>();
}

inline bool get_bool(const Diagnostics& d, const json& obj, const std::string& key) {
  const json& v = obj.at(key);
  if (!v.is_boolean()) d.fail(key, "'" + key + "' must be true or false");
  return v.get<bool>();
}

inline std::string get_string(const Diagnostics& d, const json& obj, const std::string& key) {
  const json& v = obj.at(key);
  if (!v.is_string()) d.fail(key, "'" + key + "' must be a string");
  return v.get<std::string>();
}

inline void require_object(const Diagnostics& d, const json& v, const std::string& key) {
  if (!v.is_object()) d.fail(key, "'" + key + "' must be an object");
}

inline void apply_forcing(const Diagnostics& d, const json& o, ForcingConfig& c) {
  check_keys(d, o,
             {"eta0", "eta_max", "eps0", "gamma", "r", "phi0", "an_p1", "an_p2", "an_p3", "botti_alpha",
              "safeguard"},
             "forcing");
  const std::map<std::string, double*> nums{{"eta0", &c.eta0},         {"eta_max", &c.eta_max},
                                            {"eps0", &c.eps0},         {"gamma", &c.gamma},
                                            {"r", &c.r},               {"phi0", &c.phi0},
                                            {"an_p1", &c.an_p1},       {"an_p2", &c.an_p2},
                                            {"an_p3", &c.an_p3},       {"botti_alpha", &c.botti_alpha}};
  for (const auto& [k, p] : nums) {
    if (o.contains(k)) *p = get_number(d, o, k);
  }
  if (o.contains("safeguard")) c.safeguard = get_bool(d, o, "safeguard");
}

inline void apply_newton(const Diagnostics& d, const json& o, NewtonConfig& c) {
  check_keys(d, o, {"rtol", "atol", "max_outer"}, "newton");
  if (o.contains("rtol")) c.rtol = get_number(d, o, "rtol");
  if (o.contains("atol")) c.atol = get_number(d, o, "atol");
  if (o.contains("max_outer")) c.max_outer = get_int(d, o, "max_outer");
}

inline void apply_krylov(const Diagnostics& d, const json& o, KrylovConfig& c) {
  check_keys(d, o, {"max_iters", "restart", "abs_floor", "preconditioner"}, "krylov");
  if (o.contains("max_iters")) c.max_iters = get_int(d, o, "max_iters");
  if (o.contains("restart")) c.restart = get_int(d, o, "restart");
  if (o.contains("abs_floor")) c.abs_floor = get_number(d, o, "abs_floor");
  if (o.contains("preconditioner")) {
    try {
      c.preconditioner = parse_preconditioner(get_string(d, o, "preconditioner"));
    } catch (const ConfigError& e) {
      d.fail("preconditioner", e.what());
    }
  }
}

inline void apply_transient(const Diagnostics& d, const json& o, TransientConfig& c) {
  check_keys(d, o, {"t_end", "dt_init", "dt_min", "dt_max", "cut_factor", "growth_factor"}, "transient");
  if (o.contains("t_end")) c.t_end = get_number(d, o, "t_end");
  if (o.contains("dt_init")) c.dt_init = get_number(d, o, "dt_init");
  if (o.contains("dt_min")) c.dt_min = get_number(d, o, "dt_min");
  if (o.contains("dt_max")) c.dt_max = get_number(d, o, "dt_max");
  if (o.contains("cut_factor")) c.cut_factor = get_number(d, o, "cut_factor");
  if (o.contains("growth_factor")) c.growth_factor = get_number(d, o, "growth_factor");
}

inline ProblemSpec parse_problem_entry(const Diagnostics& d, const json& v, const std::string& key) {
  if (v.is_string()) {
    try {
      return parse_problem_string(v.get<std::string>());
    } catch (const ConfigError& e) {
      d.fail(key, e.what());
    }
  }
  if (!v.is_object()) d.fail(key, "'" + key + "' entries must be strings or objects");
  check_keys(d, v, {"name", "params", "case"}, "problem");
  if (!v.contains("name")) d.fail(key, "problem needs a 'name'");
  const std::string name = get_string(d, v, "name");
  std::map<std::string, double> given;
  if (v.contains("params")) {
    require_object(d, v.at("params"), "params");
    for (const auto& [k, p] : v.at("params").items()) given[k] = get_number(d, v.at("params"), k);
  }
  const std::string case_name = v.contains("case") ? get_string(d, v, "case") : "";
  if (case_name.find_first_of(",\"\n") != std::string::npos) {
    d.fail("case", "case name may not contain a comma, quote or newline");
  }
  try {
    return make_problem_spec(name, given, case_name);
  } catch (const ConfigError& e) {
    d.fail(v.contains("params") ? "params" : "name", e.what());
  }
}

}  // namespace detail

/// Problem-specific solver defaults, before any override.
inline RunSettings default_settings(const ProblemSpec& spec) {
  RunSettings s;
  if (spec.name == "bratu2d") {
    s.krylov.preconditioner = Preconditioner::ilu0;
  } else if (spec.name == "twophase1d") {
    // ILU(0) is an exact factorization of the bidiagonal saturation Jacobian.
    s.krylov.preconditioner = Preconditioner::none;
    s.newton.rtol = 1e-4;
    s.newton.atol = 1e-12;
    s.newton.max_outer = 30;
  } else {
    s.krylov.preconditioner = Preconditioner::none;
  }
  return s;
}

/// Defaults for the problem with the configuration's overrides applied.
inline RunSettings settings_for(const ExperimentConfig& cfg, const ProblemSpec& spec) {
  RunSettings s = default_settings(spec);
  const detail::Diagnostics d("", "config");
  detail::apply_forcing(d, cfg.forcing, s.forcing);
  detail::apply_newton(d, cfg.newton, s.newton);
  detail::apply_krylov(d, cfg.krylov, s.krylov);
  detail::apply_transient(d, cfg.transient, s.transient);
  return s;
}

/// Parses a JSON experiment description. `source` names the text in diagnostics.
///
/// {
///   "problem":   "bratu2d:n=16,lambda=2"  | {"name": ..., "params": {...}, "case": ...},
///   "problems":  [ ...same forms... ],          (exactly one of problem/problems)
///   "strategies": ["fixed:1e-6", "ew1", ...],
///   "forcing": {...}, "newton": {...}, "krylov": {...}, "transient": {...},
///   "output_dir": "out", "seed": 1, "timing": false
/// }
inline ExperimentConfig parse_config(const std::string& text, const std::string& source = "config") {
  const detail::Diagnostics d(text, source);
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(source + ": " + e.what());
  }
  if (!root.is_object()) d.fail("", "top level must be a JSON object");
  detail::check_keys(d, root,
                     {"problem", "problems", "strategies", "forcing", "newton", "krylov", "transient",
                      "output_dir", "seed", "timing"},
                     "config");

  ExperimentConfig cfg;
  if (root.contains("problem") == root.contains("problems")) {
    d.fail(root.contains("problem") ? "problems" : "", "give exactly one of 'problem' or 'problems'");
  }
  if (root.contains("problem")) {
    cfg.problems.push_back(detail::parse_problem_entry(d, root.at("problem"), "problem"));
  } else {
    const json& list = root.at("problems");
    if (!list.is_array() || list.empty()) d.fail("problems", "'problems' must be a non-empty array");
    for (const auto& p : list) cfg.problems.push_back(detail::parse_problem_entry(d, p, "problems"));
  }

  if (!root.contains("strategies")) d.fail("", "missing 'strategies'");
  const json& strategies = root.at("strategies");
  if (!strategies.is_array()) d.fail("strategies", "'strategies' must be an array");
  if (strategies.empty()) d.fail("strategies", "at least one strategy is required");
  for (const auto& s : strategies) {
    if (!s.is_string()) d.fail("strategies", "strategy labels must be strings");
    try {
      cfg.strategies.push_back(parse_strategy(s.get<std::string>()));
    } catch (const ConfigError& e) {
      d.fail("strategies", e.what());
    }
  }

  for (const char* sec : {"forcing", "newton", "krylov", "transient"}) {
    if (root.contains(sec)) detail::require_object(d, root.at(sec), sec);
  }
  if (root.contains("forcing")) cfg.forcing = root.at("forcing");
  if (root.contains("newton")) cfg.newton = root.at("newton");
  if (root.contains("krylov")) cfg.krylov = root.at("krylov");
  if (root.contains("transient")) cfg.transient = root.at("transient");

  if (root.contains("output_dir")) cfg.output_dir = detail::get_string(d, root, "output_dir");
  if (root.contains("seed")) {
    const json& v = root.at("seed");
    if (!v.is_number_unsigned()) d.fail("seed", "'seed' must be a non-negative integer");
    cfg.seed = v.get<std::uint64_t>();
  }
  if (root.contains("timing")) cfg.timing = detail::get_bool(d, root, "timing");

  // Validate every override against every problem now, with line numbers.
  for (const auto& spec : cfg.problems) {
    RunSettings s = default_settings(spec);
    detail::apply_forcing(d, cfg.forcing, s.forcing);
    detail::apply_newton(d, cfg.newton, s.newton);
    detail::apply_krylov(d, cfg.krylov, s.krylov);
    detail::apply_transient(d, cfg.transient, s.transient);
    auto check = [&](const char* section, auto&& fn) {
      try {
        fn();
      } catch (const ConfigError& e) {
        d.fail(root.contains(section) ? section : "", e.what());
      }
    };
    check("forcing", [&] { s.forcing.validate(); });
    check("newton", [&] { s.newton.validate(); });
    check("krylov", [&] { s.krylov.validate(); });
    if (spec.transient()) check("transient", [&] { s.transient.validate(); });
  }
  return cfg;
}

inline ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open config file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path);
}

}  // namespace inewton::harness
