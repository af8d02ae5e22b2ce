#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "repnet/dopri.hpp"
#include "repnet/model.hpp"
#include "repnet/state.hpp"

namespace repnet {

/// Time samples of an integration with the headline metric and the
/// group-sum drift recorded at each sample.
struct Trajectory {
  std::vector<double> times;
  std::vector<CommunityState> states;
  std::vector<double> pc;
  std::vector<double> conservation_error;

  std::size_t size() const noexcept { return times.size(); }
  bool empty() const noexcept { return times.empty(); }
  const CommunityState& final_state() const { return states.back(); }
  double final_pc() const { return pc.back(); }
  double max_conservation_error() const {
    return conservation_error.empty() ? 0.0 : *std::max_element(conservation_error.begin(), conservation_error.end());
  }
};

struct SteadyState {
  CommunityState state;
  bool converged = false;
  double t_reached = 0.0;
  double residual = 0.0;  // sup-norm of the right-hand side at `state`
  double pc = 0.0;
};

inline double sup_norm(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

namespace detail {

inline constexpr double kConservationTol = 1e-9;

inline DormandPrince::Rhs model_rhs(const Model& model) {
  return [&model](double, std::span<const double> y, std::span<double> dy) { model.rhs(y, dy); };
}

}  // namespace detail

/// Integrates the model from `initial` over [0, settings.t_end], sampling every
/// settings.sample_interval. Throws IntegrationError if a sample drifts off the
/// conserved group sums by more than 1e-9.
inline Trajectory integrate(const CommunityState& initial, const ModelParams& params,
                            const IntegratorSettings& settings) {
  validate_state(initial, params, 1e-12);
  const Model model(params);
  DormandPrince solver(settings);
  Trajectory traj;
  const auto groups = initial.groups();
  const auto levels = initial.levels();
  solver.integrate(detail::model_rhs(model), initial.data(),
                   [&](double t, std::span<const double> y, bool at_sample) {
                     if (!at_sample) return true;
                     CommunityState s(groups, levels, {y.begin(), y.end()});
                     const double drift = conservation_error(s, params);
                     if (drift > detail::kConservationTol)
                       throw IntegrationError("group sums drifted by " + std::to_string(drift), t, s.data());
                     traj.times.push_back(t);
                     traj.pc.push_back(model.overall_pc(y));
                     traj.conservation_error.push_back(drift);
                     traj.states.push_back(std::move(s));
                     return true;
                   });
  return traj;
}

/// Integrates until the sup-norm of the right-hand side drops below
/// settings.equilibrium_eps or t_end is reached.
inline SteadyState steady_state(const CommunityState& initial, const ModelParams& params,
                                const IntegratorSettings& settings) {
  validate_state(initial, params, 1e-12);
  const Model model(params);
  std::vector<double> dy(model.dimension());
  SteadyState out;

  model.rhs(initial.data(), dy);
  if (sup_norm(dy) < settings.equilibrium_eps) {
    out.state = initial;
    out.converged = true;
    out.residual = sup_norm(dy);
    out.pc = model.overall_pc(initial.data());
    return out;
  }

  DormandPrince solver(settings);
  std::vector<double> last(initial.data());
  double t_last = 0.0;
  solver.integrate(detail::model_rhs(model), initial.data(), [&](double t, std::span<const double> y, bool) {
    last.assign(y.begin(), y.end());
    t_last = t;
    model.rhs(y, dy);
    if (sup_norm(dy) < settings.equilibrium_eps) {
      out.converged = true;
      return false;
    }
    return true;
  });
  out.state = CommunityState(initial.groups(), initial.levels(), std::move(last));
  out.t_reached = t_last;
  out.residual = sup_norm(model.rhs(out.state.data()));
  out.pc = model.overall_pc(out.state.data());
  return out;
}

}  // namespace repnet
