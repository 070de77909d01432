#pragma once

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "inewton/error.hpp"

namespace inewton {

enum class ForcingRule { fixed, brown_saad, ew1, ew2, an_et_al, botti, new_choice1, new_choice2 };

/// Variable-coefficient schedules for the power p of the inex1 rules and the
/// coefficient phi of the inex2 rules.
enum class Schedule { steep, exp, cub };

/// A forcing-term strategy as selected on the command line.
struct StrategyKind {
  ForcingRule rule = ForcingRule::fixed;
  double fixed_value = 1e-4;
  Schedule schedule = Schedule::steep;
  /// Label exactly as given by the user, e.g. "fixed:1e-6" or "inex2steep".
  std::string label = "fixed:1e-4";

  static StrategyKind fixed(double value) {
    if (!(value > 0.0 && value < 1.0)) {
      throw ConfigError("fixed forcing value must lie in (0,1), got " + std::to_string(value));
    }
    StrategyKind k;
    k.rule = ForcingRule::fixed;
    k.fixed_value = value;
    char buf[64];
    std::snprintf(buf, sizeof buf, "fixed:%g", value);
    k.label = buf;
    return k;
  }

  static StrategyKind of(ForcingRule rule, Schedule schedule = Schedule::steep);

  /// Forcing rules whose value depends on the previous outer iteration.
  [[nodiscard]] bool history_dependent() const noexcept {
    return rule != ForcingRule::fixed && rule != ForcingRule::brown_saad;
  }
};

inline const char* schedule_suffix(Schedule s) {
  switch (s) {
    case Schedule::steep: return "steep";
    case Schedule::exp: return "exp";
    case Schedule::cub: return "cub";
  }
  return "?";
}

inline std::string canonical_label(ForcingRule rule, Schedule schedule) {
  switch (rule) {
    case ForcingRule::fixed: return "fixed";
    case ForcingRule::brown_saad: return "brownsaad";
    case ForcingRule::ew1: return "ew1";
    case ForcingRule::ew2: return "ew2";
    case ForcingRule::an_et_al: return "an";
    case ForcingRule::botti: return "botti";
    case ForcingRule::new_choice1: return std::string("inex1") + schedule_suffix(schedule);
    case ForcingRule::new_choice2: return std::string("inex2") + schedule_suffix(schedule);
  }
  return "?";
}

inline StrategyKind StrategyKind::of(ForcingRule rule, Schedule schedule) {
  if (rule == ForcingRule::fixed) throw ConfigError("use StrategyKind::fixed(value)");
  StrategyKind k;
  k.rule = rule;
  k.schedule = schedule;
  k.label = canonical_label(rule, schedule);
  return k;
}

/// Parses fixed:<v>, brownsaad, ew1, ew2, an, botti, inex{1,2}{steep,exp,cub}.
inline StrategyKind parse_strategy(const std::string& text) {
  if (text.rfind("fixed:", 0) == 0) {
    const std::string num = text.substr(6);
    char* end = nullptr;
    const double v = std::strtod(num.c_str(), &end);
    if (num.empty() || end != num.c_str() + num.size()) {
      throw ConfigError("malformed fixed forcing value in '" + text + "'");
    }
    StrategyKind k = StrategyKind::fixed(v);
    k.label = text;
    return k;
  }
  if (text == "brownsaad") return StrategyKind::of(ForcingRule::brown_saad);
  if (text == "ew1") return StrategyKind::of(ForcingRule::ew1);
  if (text == "ew2") return StrategyKind::of(ForcingRule::ew2);
  if (text == "an") return StrategyKind::of(ForcingRule::an_et_al);
  if (text == "botti") return StrategyKind::of(ForcingRule::botti);
  for (Schedule s : {Schedule::steep, Schedule::exp, Schedule::cub}) {
    if (text == canonical_label(ForcingRule::new_choice1, s)) return StrategyKind::of(ForcingRule::new_choice1, s);
    if (text == canonical_label(ForcingRule::new_choice2, s)) return StrategyKind::of(ForcingRule::new_choice2, s);
  }
  throw ConfigError("unknown forcing strategy '" + text + "'");
}

/// Parameters shared by all forcing rules.
struct ForcingConfig {
  double eta0 = 0.5;
  double eta_max = 0.9;
  double eps0 = 1e-6;
  double gamma = 0.5;
  double r = 1.618;
  double phi0 = 0.5;
  double an_p1 = 0.1;
  double an_p2 = 0.25;
  double an_p3 = 0.75;
  double botti_alpha = 1.5;
  /// Classical Eisenstat-Walker safeguard against sudden drops of eta.
  bool safeguard = false;

  void validate() const {
    auto require = [](bool ok, const char* msg) {
      if (!ok) throw ConfigError(msg);
    };
    require(eta0 >= 0.0 && eta0 < 1.0, "forcing.eta0 must lie in [0,1)");
    require(eta_max > 0.0 && eta_max < 1.0, "forcing.eta_max must lie in (0,1)");
    require(eps0 > 0.0, "forcing.eps0 must be positive");
    require(eps0 <= eta_max, "forcing.eps0 must not exceed forcing.eta_max");
    require(gamma >= 0.0 && gamma <= 1.0, "forcing.gamma must lie in [0,1]");
    require(r > 1.0 && r <= 2.0, "forcing.r must lie in (1,2]");
    require(phi0 > 0.0 && phi0 < 1.0, "forcing.phi0 must lie in (0,1)");
    require(an_p1 > 0.0 && an_p1 < an_p2 && an_p2 < an_p3 && an_p3 < 1.0,
            "forcing.an_p1 < an_p2 < an_p3 must lie in (0,1)");
    require(an_p1 < 0.5, "forcing.an_p1 must be below 0.5");
    require(botti_alpha > 1.0 && botti_alpha <= 2.0, "forcing.botti_alpha must lie in (1,2]");
  }
};

}  // namespace inewton
