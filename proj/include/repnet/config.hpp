#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "repnet/dopri.hpp"
#include "repnet/error.hpp"
#include "repnet/params.hpp"

namespace repnet {

/// One "init = group level mass" line. A missing mass ("*") stands for the
/// whole share of the group, which keeps sweeps over f_cl/f_acl consistent.
struct InitEntry {
  Group group = Group::Regular;
  std::size_t level = 0;
  std::optional<double> mass;
  std::size_t line = 0;
};

struct OracleBlock {
  std::size_t N = 2000;
  double dt = 0.05;
  std::uint64_t seed = 1;
  std::optional<double> t_end;            // defaults to the scenario horizon
  std::optional<double> sample_interval;  // defaults to the scenario interval
};

struct SweepAxis {
  std::string parameter;
  double start = 0.0;
  double stop = 0.0;
  std::size_t count = 1;

  double value(std::size_t i) const {
    if (count == 1) return start;
    if (i + 1 == count) return stop;
    return start + (stop - start) * static_cast<double>(i) / static_cast<double>(count - 1);
  }
};

enum class SweepMetric { FinalPc, FinalState };

struct SweepBlock {
  SweepAxis axis1, axis2;
  SweepMetric metric = SweepMetric::FinalPc;
};

struct ScenarioConfig {
  std::string name;
  Variant variant = Variant::NoClique;
  std::size_t L = 10;
  double alpha = 0.0;
  double sigma = 0.0;
  double f_cl = 0.0;
  double f_acl = 0.0;
  double p_lambda = 0.0;
  double gamma = 1.0;
  std::vector<InitEntry> initial;
  IntegratorSettings integrator{};
  std::optional<OracleBlock> oracle;
  std::optional<SweepBlock> sweep;
  std::size_t field_n = 21;
  std::string output_dir = "out";

  ModelParams model_params() const {
    ModelParams p{variant, ReputationGrid(L), {alpha, sigma}, {f_cl, f_acl, p_lambda, gamma}};
    p.validate();
    return p;
  }
};

struct SweepConfig {
  ScenarioConfig base;
  SweepAxis axis1, axis2;
  SweepMetric metric = SweepMetric::FinalPc;
};

inline const std::vector<std::string>& sweepable_parameters() {
  static const std::vector<std::string> names{"alpha", "sigma", "f_cl", "f_acl", "f_pair", "p_lambda", "gamma"};
  return names;
}

/// Sets one numeric field by name; "f_pair" sets f_cl and f_acl together.
inline void set_parameter(ScenarioConfig& cfg, std::string_view name, double v) {
  if (name == "alpha") cfg.alpha = v;
  else if (name == "sigma") cfg.sigma = v;
  else if (name == "f_cl") cfg.f_cl = v;
  else if (name == "f_acl") cfg.f_acl = v;
  else if (name == "f_pair") cfg.f_cl = cfg.f_acl = v;
  else if (name == "p_lambda") cfg.p_lambda = v;
  else if (name == "gamma") cfg.gamma = v;
  else throw InvalidArgument("parameter '" + std::string(name) + "' cannot be swept");
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

inline double to_double(std::string_view s, std::size_t line, std::string_view key) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc{} || ptr != end || !std::isfinite(v))
    throw ConfigError(line, std::string(key) + ": expected a number, got '" + std::string(s) + "'");
  return v;
}

inline std::uint64_t to_uint(std::string_view s, std::size_t line, std::string_view key) {
  std::uint64_t v = 0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc{} || ptr != end)
    throw ConfigError(line, std::string(key) + ": expected a non-negative integer, got '" + std::string(s) + "'");
  return v;
}

inline Variant parse_variant(std::string_view s, std::size_t line) {
  if (s == "no_clique") return Variant::NoClique;
  if (s == "one_clique") return Variant::OneClique;
  if (s == "two_cliques") return Variant::TwoCliques;
  throw ConfigError(line, "variant: expected no_clique, one_clique or two_cliques, got '" + std::string(s) + "'");
}

inline Group parse_group(std::string_view s, std::size_t line) {
  if (s == "regular") return Group::Regular;
  if (s == "clique") return Group::Clique;
  if (s == "anticlique") return Group::AntiClique;
  throw ConfigError(line, "init: unknown group '" + std::string(s) + "'");
}

inline SweepAxis parse_axis(std::string_view value, std::size_t line, std::string_view key) {
  const auto tok = split_ws(value);
  if (tok.size() != 4) throw ConfigError(line, std::string(key) + ": expected 'parameter start stop count'");
  SweepAxis axis;
  axis.parameter = tok[0];
  bool known = false;
  for (const auto& n : sweepable_parameters()) known = known || n == axis.parameter;
  if (!known) throw ConfigError(line, std::string(key) + ": parameter '" + axis.parameter + "' cannot be swept");
  axis.start = to_double(tok[1], line, key);
  axis.stop = to_double(tok[2], line, key);
  axis.count = to_uint(tok[3], line, key);
  if (axis.count == 0) throw ConfigError(line, std::string(key) + ": count must be at least 1");
  return axis;
}

inline void check_range(double v, double lo, double hi, std::string_view key, std::map<std::string, std::size_t>& lines) {
  if (!(v >= lo && v <= hi)) {
    std::ostringstream msg;
    msg << key << " = " << v << " outside [" << lo << ", " << hi << "]";
    throw ConfigError(lines[std::string(key)], msg.str());
  }
}

}  // namespace detail

/// Whole-group mass for an init entry, after resolving "*".
inline double init_mass(const InitEntry& e, const ModelParams& params) {
  return e.mass ? *e.mass : params.group_fraction(e.group);
}

/// Checks parameter ranges, variant constraints, init lines and group sums.
/// Errors name the line that introduced the offending value.
inline void validate_config(const ScenarioConfig& cfg, std::map<std::string, std::size_t> lines = {}) {
  using detail::check_range;
  if (cfg.L < 1) throw ConfigError(lines["L"], "L must be at least 1");
  check_range(cfg.alpha, -1.0, 1.0, "alpha", lines);
  check_range(cfg.sigma, -1.0, 1.0, "sigma", lines);
  check_range(cfg.f_cl, 0.0, 1.0, "f_cl", lines);
  check_range(cfg.f_acl, 0.0, 1.0, "f_acl", lines);
  check_range(cfg.p_lambda, 0.0, 0.5, "p_lambda", lines);
  check_range(cfg.gamma, 0.0, 1.0, "gamma", lines);
  if (cfg.f_cl + cfg.f_acl > 1.0 + 1e-12) throw ConfigError(lines["f_acl"], "f_cl + f_acl exceeds 1");
  if (cfg.variant == Variant::NoClique && (cfg.f_cl != 0.0 || cfg.f_acl != 0.0))
    throw ConfigError(lines[cfg.f_cl != 0.0 ? "f_cl" : "f_acl"], "variant no_clique requires f_cl = f_acl = 0");
  if (cfg.variant == Variant::OneClique && cfg.f_acl != 0.0)
    throw ConfigError(lines["f_acl"], "variant one_clique requires f_acl = 0");

  const auto& s = cfg.integrator;
  const auto pos = [&](double v, const char* key) {
    if (!(v > 0.0)) throw ConfigError(lines[key], std::string(key) + " must be positive");
  };
  pos(s.abs_tol, "abs_tol");
  pos(s.rel_tol, "rel_tol");
  pos(s.t_end, "t_end");
  pos(s.initial_step, "initial_step");
  pos(s.sample_interval, "sample_interval");
  pos(s.equilibrium_eps, "equilibrium_eps");
  if (s.max_step < 0.0) throw ConfigError(lines["max_step"], "max_step must be positive");
  if (s.sample_interval > s.t_end) throw ConfigError(lines["sample_interval"], "sample_interval exceeds t_end");
  if (cfg.field_n < 2) throw ConfigError(lines["field.n"], "field.n must be at least 2");

  const ModelParams params = cfg.model_params();
  std::array<double, 3> sums{};
  std::array<bool, 3> seen{};
  for (const auto& e : cfg.initial) {
    const auto g = static_cast<std::size_t>(e.group);
    if (g >= params.groups())
      throw ConfigError(e.line, "init: group '" + std::string(to_string(e.group)) + "' is not part of variant " +
                                    std::string(to_string(cfg.variant)));
    if (e.level > cfg.L) throw ConfigError(e.line, "init: level " + std::to_string(e.level) + " exceeds L");
    const double m = init_mass(e, params);
    if (!(m >= 0.0 && m <= 1.0)) throw ConfigError(e.line, "init: mass must lie in [0,1]");
    sums[g] += m;
    seen[g] = true;
  }
  for (std::size_t g = 0; g < params.groups(); ++g) {
    const auto grp = static_cast<Group>(g);
    const double want = params.group_fraction(grp);
    if (!seen[g] && want > 0.0)
      throw ConfigError(lines["init"], "init: no entry for group '" + std::string(to_string(grp)) + "'");
    if (std::abs(sums[g] - want) > 1e-9) {
      std::size_t line = lines["init"];
      for (const auto& e : cfg.initial)
        if (e.group == grp) line = e.line;
      std::ostringstream msg;
      msg << "init: " << to_string(grp) << " masses sum to " << sums[g] << ", expected " << want;
      throw ConfigError(line, msg.str());
    }
  }

  if (cfg.oracle) {
    const auto& o = *cfg.oracle;
    if (o.N < 4) throw ConfigError(lines["oracle.N"], "oracle.N must be at least 4");
    if (!(o.dt > 0.0 && o.dt <= 0.1)) throw ConfigError(lines["oracle.dt"], "oracle.dt must lie in (0, 0.1]");
    if (o.t_end && !(*o.t_end > 0.0)) throw ConfigError(lines["oracle.t_end"], "oracle.t_end must be positive");
  }
}

/// Parses the line-oriented "key = value" format ('#' starts a comment).
/// Without init lines every group starts at level round(0.6 L).
inline ScenarioConfig parse_config(std::string_view text) {
  using namespace detail;
  ScenarioConfig cfg;
  std::map<std::string, std::size_t> lines;
  std::optional<SweepAxis> axis1, axis2;
  SweepMetric metric = SweepMetric::FinalPc;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    const auto line = trim(raw);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(line_no, "expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    const auto value = trim(line.substr(eq + 1));
    if (value.empty()) throw ConfigError(line_no, key + ": missing value");
    if (key != "init" && lines.count(key)) throw ConfigError(line_no, "duplicate key '" + key + "'");
    lines[key] = line_no;

    auto& s = cfg.integrator;
    auto oracle = [&]() -> OracleBlock& {
      if (!cfg.oracle) cfg.oracle.emplace();
      return *cfg.oracle;
    };
    if (key == "name") cfg.name = std::string(value);
    else if (key == "variant") cfg.variant = parse_variant(value, line_no);
    else if (key == "L") cfg.L = to_uint(value, line_no, key);
    else if (key == "alpha") cfg.alpha = to_double(value, line_no, key);
    else if (key == "sigma") cfg.sigma = to_double(value, line_no, key);
    else if (key == "f_cl") cfg.f_cl = to_double(value, line_no, key);
    else if (key == "f_acl") cfg.f_acl = to_double(value, line_no, key);
    else if (key == "p_lambda") cfg.p_lambda = to_double(value, line_no, key);
    else if (key == "gamma") cfg.gamma = to_double(value, line_no, key);
    else if (key == "t_end") s.t_end = to_double(value, line_no, key);
    else if (key == "abs_tol") s.abs_tol = to_double(value, line_no, key);
    else if (key == "rel_tol") s.rel_tol = to_double(value, line_no, key);
    else if (key == "initial_step") s.initial_step = to_double(value, line_no, key);
    else if (key == "max_step") s.max_step = to_double(value, line_no, key);
    else if (key == "sample_interval") s.sample_interval = to_double(value, line_no, key);
    else if (key == "equilibrium_eps") s.equilibrium_eps = to_double(value, line_no, key);
    else if (key == "output_dir") cfg.output_dir = std::string(value);
    else if (key == "field.n") cfg.field_n = to_uint(value, line_no, key);
    else if (key == "oracle.N") oracle().N = to_uint(value, line_no, key);
    else if (key == "oracle.dt") oracle().dt = to_double(value, line_no, key);
    else if (key == "oracle.seed") oracle().seed = to_uint(value, line_no, key);
    else if (key == "oracle.t_end") oracle().t_end = to_double(value, line_no, key);
    else if (key == "oracle.sample_interval") oracle().sample_interval = to_double(value, line_no, key);
    else if (key == "sweep.axis1") axis1 = parse_axis(value, line_no, key);
    else if (key == "sweep.axis2") axis2 = parse_axis(value, line_no, key);
    else if (key == "sweep.metric") {
      if (value == "final_pc") metric = SweepMetric::FinalPc;
      else if (value == "final_state") metric = SweepMetric::FinalState;
      else throw ConfigError(line_no, "sweep.metric: expected final_pc or final_state");
    } else if (key == "init") {
      const auto tok = split_ws(value);
      if (tok.size() != 3) throw ConfigError(line_no, "init: expected 'group level mass'");
      InitEntry e;
      e.group = parse_group(tok[0], line_no);
      e.level = to_uint(tok[1], line_no, key);
      if (tok[2] != "*") e.mass = to_double(tok[2], line_no, key);
      e.line = line_no;
      cfg.initial.push_back(e);
    } else {
      throw ConfigError(line_no, "unknown key '" + key + "'");
    }
  }

  if (axis1.has_value() != axis2.has_value())
    throw ConfigError(lines[axis1 ? "sweep.axis1" : "sweep.axis2"], "a sweep needs both sweep.axis1 and sweep.axis2");
  if (axis1) cfg.sweep = SweepBlock{*axis1, *axis2, metric};
  else if (lines.count("sweep.metric")) throw ConfigError(lines["sweep.metric"], "sweep.metric without sweep axes");

  if (cfg.initial.empty()) {
    const auto level = static_cast<std::size_t>(std::floor(0.6 * static_cast<double>(cfg.L) + 0.5));
    for (std::size_t g = 0; g < group_count(cfg.variant); ++g)
      cfg.initial.push_back({static_cast<Group>(g), level, std::nullopt, 0});
  }
  validate_config(cfg, lines);
  return cfg;
}

/// Extracts the sweep description; the config must contain sweep axes.
inline SweepConfig sweep_config(const ScenarioConfig& cfg) {
  if (!cfg.sweep) throw ConfigError(0, "configuration has no sweep.axis1/sweep.axis2");
  return {cfg, cfg.sweep->axis1, cfg.sweep->axis2, cfg.sweep->metric};
}

}  // namespace repnet
