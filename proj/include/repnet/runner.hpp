#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <filesystem>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "repnet/analysis.hpp"
#include "repnet/config.hpp"
#include "repnet/dynamics.hpp"
#include "repnet/io.hpp"
#include "repnet/oracle.hpp"

namespace repnet {

namespace fs = std::filesystem;

/// Builds the initial state described by the config's init lines.
inline CommunityState initial_state(const ScenarioConfig& cfg, const ModelParams& params) {
  CommunityState s = CommunityState::zeros(params);
  for (const auto& e : cfg.initial) s.at(e.group, e.level) += init_mass(e, params);
  validate_state(s, params, 1e-9);
  return s;
}

/// Per-group starting level for the agent oracle; each group present must start at one level.
inline InitialLevels oracle_levels(const ScenarioConfig& cfg, const ModelParams& params) {
  InitialLevels levels{};
  std::array<bool, 3> seen{};
  for (const auto& e : cfg.initial) {
    if (init_mass(e, params) == 0.0) continue;
    const auto g = static_cast<std::size_t>(e.group);
    if (seen[g] && levels[g] != e.level)
      throw ConfigError(e.line, "the oracle needs every group to start at a single level");
    levels[g] = e.level;
    seen[g] = true;
  }
  return levels;
}

struct ScenarioResult {
  Trajectory trajectory;
  CommunityState final_state;
  double final_pc = 0.0;
  double residual = 0.0;
  bool converged = false;
};

inline std::string summary_csv(const ScenarioResult& r, double t_final) {
  std::string out = "t_final,final_pc,residual,converged," +
                    io::state_header(r.final_state.groups(), r.final_state.levels()) + "\n";
  std::string row = io::num(t_final) + ',' + io::num(r.final_pc) + ',' + io::num(r.residual) + ',' +
                    (r.converged ? "1" : "0");
  io::append_state(row, r.final_state);
  return out + row + "\n";
}

/// Integrates the scenario and writes trajectory.csv and summary.csv into
/// `out_dir` (nothing is written when it is empty).
inline ScenarioResult run_scenario(const ScenarioConfig& cfg, const fs::path& out_dir) {
  const ModelParams params = cfg.model_params();
  const CommunityState init = initial_state(cfg, params);
  ScenarioResult r;
  r.trajectory = integrate(init, params, cfg.integrator);
  r.final_state = r.trajectory.final_state();
  r.final_pc = r.trajectory.final_pc();
  r.residual = sup_norm(Model(params).rhs(r.final_state.data()));
  r.converged = r.residual < cfg.integrator.equilibrium_eps;
  if (!out_dir.empty()) {
    const auto& t = r.trajectory;
    io::write_file(out_dir / "trajectory.csv", io::trajectory_csv(t.times, t.states, t.pc, t.conservation_error));
    io::write_file(out_dir / "summary.csv", summary_csv(r, t.times.back()));
  }
  return r;
}

struct OracleResult {
  OracleTrajectory empirical;
  Trajectory mean_field;          // ODE sampled at the oracle's sample times
  std::vector<double> tv_distance;  // per oracle sample
};

/// Runs the agent oracle next to the ODE started from the same empirical
/// distribution; writes oracle_trajectory.csv and oracle_comparison.csv.
inline OracleResult run_oracle_scenario(const ScenarioConfig& cfg, const fs::path& out_dir) {
  if (!cfg.oracle) throw ConfigError(0, "configuration has no oracle block (oracle.N, oracle.dt, oracle.seed)");
  const ModelParams params = cfg.model_params();
  const auto& blk = *cfg.oracle;
  OracleSettings os;
  os.N = blk.N;
  os.dt = blk.dt;
  os.seed = blk.seed;
  os.t_end = blk.t_end.value_or(cfg.integrator.t_end);
  os.sample_interval = blk.sample_interval.value_or(cfg.integrator.sample_interval);
  const auto levels = oracle_levels(cfg, params);

  OracleResult r;
  r.empirical = run_oracle(os, params, levels);

  // The population's rounded group shares define the mean-field reference.
  ModelParams ref = params;
  const CommunityState start = r.empirical.states.front();
  if (ref.groups() > 1) ref.clique.f_cl = start.group_sum(Group::Clique);
  if (ref.groups() > 2) ref.clique.f_acl = start.group_sum(Group::AntiClique);
  IntegratorSettings is = cfg.integrator;
  is.t_end = os.t_end;
  is.sample_interval = os.sample_interval;
  r.mean_field = integrate(start, ref, is);

  const std::size_t n = std::min(r.mean_field.size(), r.empirical.states.size());
  for (std::size_t i = 0; i < n; ++i) r.tv_distance.push_back(total_variation(r.empirical.states[i], r.mean_field.states[i]));

  if (!out_dir.empty()) {
    const auto& e = r.empirical;
    io::write_file(out_dir / "oracle_trajectory.csv", io::trajectory_csv(e.times, e.states, e.pc, e.conservation_error));
    std::string cmp = "t,empirical_pc,mean_field_pc,tv_distance\n";
    for (std::size_t i = 0; i < n; ++i)
      cmp += io::num(e.times[i]) + ',' + io::num(e.pc[i]) + ',' + io::num(r.mean_field.pc[i]) + ',' +
             io::num(r.tv_distance[i]) + '\n';
    io::write_file(out_dir / "oracle_comparison.csv", cmp);
  }
  return r;
}

struct SweepResult {
  std::vector<double> xs, ys;
  std::vector<SteadyState> cells;  // axis1-major: cells[i * ys.size() + j]

  double pc(std::size_t i, std::size_t j) const { return cells[i * ys.size() + j].pc; }
};

/// Config for one sweep cell with both axis parameters applied.
inline ScenarioConfig sweep_point(const SweepConfig& sc, double x, double y) {
  ScenarioConfig cfg = sc.base;
  cfg.sweep.reset();
  set_parameter(cfg, sc.axis1.parameter, x);
  set_parameter(cfg, sc.axis2.parameter, y);
  validate_config(cfg);
  return cfg;
}

inline std::string sweep_csv(const SweepConfig& sc, const SweepResult& r) {
  std::string out = sc.axis1.parameter + ',' + sc.axis2.parameter + ",final_pc";
  const bool with_state = sc.metric == SweepMetric::FinalState && !r.cells.empty();
  if (with_state) out += ',' + io::state_header(r.cells[0].state.groups(), r.cells[0].state.levels());
  out += '\n';
  for (std::size_t i = 0; i < r.xs.size(); ++i) {
    for (std::size_t j = 0; j < r.ys.size(); ++j) {
      const auto& c = r.cells[i * r.ys.size() + j];
      std::string row = io::num(r.xs[i]) + ',' + io::num(r.ys[j]) + ',' + io::num(c.pc);
      if (with_state) io::append_state(row, c.state);
      out += row + '\n';
    }
  }
  return out;
}

/// Steady state at every grid point, computed on up to `workers` threads.
/// Writes sweep.csv (axis1-major) and heatmap.svg after all points finish.
inline SweepResult run_sweep(const SweepConfig& sc, const fs::path& out_dir, unsigned workers = 1) {
  SweepResult r;
  for (std::size_t i = 0; i < sc.axis1.count; ++i) r.xs.push_back(sc.axis1.value(i));
  for (std::size_t j = 0; j < sc.axis2.count; ++j) r.ys.push_back(sc.axis2.value(j));
  const std::size_t total = r.xs.size() * r.ys.size();
  r.cells.resize(total);

  // Validate every point up front so configuration errors surface before any work.
  std::vector<ScenarioConfig> points;
  points.reserve(total);
  for (double x : r.xs)
    for (double y : r.ys) points.push_back(sweep_point(sc, x, y));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t idx = next++; idx < total; idx = next++) {
      try {
        const auto& cfg = points[idx];
        const ModelParams params = cfg.model_params();
        r.cells[idx] = steady_state(initial_state(cfg, params), params, cfg.integrator);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(total)));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);

  if (!out_dir.empty()) {
    io::write_file(out_dir / "sweep.csv", sweep_csv(sc, r));
    std::vector<double> values(total);
    for (std::size_t k = 0; k < total; ++k) values[k] = r.cells[k].pc;
    const std::string title = sc.base.name.empty() ? "final p_c" : sc.base.name + ": final p_c";
    io::write_file(out_dir / "heatmap.svg",
                   io::heatmap_svg(title, sc.axis1.parameter, r.xs, sc.axis2.parameter, r.ys, values));
  }
  return r;
}

/// Samples the reduced three-level field and writes field.csv and field.svg.
inline std::vector<FieldSample> emit_vector_field(const ModelParams& params, std::size_t n, const fs::path& out_dir) {
  auto samples = vector_field_grid(params, n);
  if (!out_dir.empty()) {
    std::string csv = "R0,R2,dR0,dR2\n";
    std::vector<io::Arrow> arrows;
    for (const auto& s : samples) {
      csv += io::num(s.R0) + ',' + io::num(s.R2) + ',' + io::num(s.dR0) + ',' + io::num(s.dR2) + '\n';
      arrows.push_back({s.R0, s.R2, s.dR0, s.dR2});
    }
    io::write_file(out_dir / "field.csv", csv);
    const std::string title =
        "alpha=" + io::num(params.behavior.alpha) + ", sigma=" + io::num(params.behavior.sigma);
    io::write_file(out_dir / "field.svg", io::arrow_svg(title, "R0", "R2", arrows));
  }
  return samples;
}

inline ModelParams field_params(const ScenarioConfig& cfg) {
  if (cfg.variant != Variant::NoClique || cfg.L != 2)
    throw ConfigError(0, "the vector field needs variant = no_clique and L = 2");
  return cfg.model_params();
}

struct EquilibriumRow {
  double R0 = 0.0;
  EquilibriumCheck check;
};

/// Checks the equilibrium family at R0 in {0, 0.25, 0.5, 0.75, max}.
inline std::vector<EquilibriumRow> equilibria_table(const ModelParams& params, double tol = 1e-12) {
  const double top = max_equilibrium_R0(params);
  std::vector<double> samples;
  for (double r0 : {0.0, 0.25, 0.5, 0.75})
    if (r0 < top) samples.push_back(r0);
  samples.push_back(top);
  std::vector<EquilibriumRow> rows;
  for (double r0 : samples) {
    const auto state = family_equilibrium({params.variant, r0}, params);
    rows.push_back({r0, verify_equilibrium(state, params, tol)});
  }
  return rows;
}

}  // namespace repnet
