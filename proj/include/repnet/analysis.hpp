#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "repnet/dynamics.hpp"
#include "repnet/linalg.hpp"
#include "repnet/model.hpp"
#include "repnet/state.hpp"

namespace repnet {

/// A member of the equilibrium family: regular mass split between levels 0
/// and L, all clique and anti-clique mass at level 0.
struct EquilibriumSpec {
  Variant variant = Variant::NoClique;
  double R0 = 0.0;
};

struct EquilibriumCheck {
  bool is_equilibrium = false;
  double residual = 0.0;
  double pc = 0.0;
};

/// Linearization summary at a point. Eigenvalues with |Re| <= 1e-6 are
/// counted as critical instead of being classified.
struct StabilityReport {
  std::vector<Complex> eigenvalues;
  double residual = 0.0;
  double pc_at_point = 0.0;
  std::size_t critical = 0;
  std::size_t stable = 0;
  std::size_t unstable = 0;
};

struct FieldSample {
  double R0, R2, dR0, dR2;
};

inline constexpr double kCriticalEps = 1e-6;

/// Upper end of the free parameter R0: the total regular mass.
inline double max_equilibrium_R0(const ModelParams& params) { return params.group_fraction(Group::Regular); }

inline CommunityState family_equilibrium(const EquilibriumSpec& spec, const ModelParams& params) {
  if (spec.variant != params.variant) throw InvalidArgument("equilibrium spec variant differs from model variant");
  const double regular = max_equilibrium_R0(params);
  if (!(spec.R0 >= 0.0 && spec.R0 <= regular + 1e-15))
    throw InvalidArgument("R0 must lie in [0, 1 - f_cl - f_acl]");
  const double r0 = std::min(spec.R0, regular);
  CommunityState s = CommunityState::zeros(params);
  const auto top = params.grid.steps();
  s.at(Group::Regular, 0) = r0;
  s.at(Group::Regular, top) += regular - r0;
  if (s.has(Group::Clique)) s.at(Group::Clique, 0) = params.clique.f_cl;
  if (s.has(Group::AntiClique)) s.at(Group::AntiClique, 0) = params.clique.f_acl;
  return s;
}

inline EquilibriumCheck verify_equilibrium(const CommunityState& state, const ModelParams& params, double tol) {
  validate_state(state, params);
  const Model model(params);
  EquilibriumCheck out;
  out.residual = sup_norm(model.rhs(state.data()));
  out.is_equilibrium = out.residual <= tol;
  out.pc = model.overall_pc(state.data());
  return out;
}

namespace detail {

inline void require_three_levels(const ModelParams& params) {
  if (params.variant != Variant::NoClique || params.grid.steps() != 2)
    throw InvalidArgument("the reduced system needs the no-clique variant on the 3-level grid");
}

inline std::array<double, 2> reduced3_unchecked(const Model& model, double R0, double R2, Evaluation mode) {
  const double R1 = 1.0 - R0 - R2;
  const std::array<double, 3> y{R0, R1, R2};
  const auto e = model.eval(y, mode).reg;
  return {-R0 * e[0] + R1 * (1.0 - e[1]), R1 * e[1] - R2 * (1.0 - e[2])};
}

}  // namespace detail

/// Planar form of the three-level system with R1 = 1 - R0 - R2 eliminated.
inline std::array<double, 2> reduced3_rhs(double R0, double R2, const ModelParams& params) {
  detail::require_three_levels(params);
  if (!(R0 >= 0.0 && R2 >= 0.0 && R0 + R2 <= 1.0 + 1e-12))
    throw InvalidArgument("reduced point must satisfy R0, R2 >= 0 and R0 + R2 <= 1");
  return detail::reduced3_unchecked(Model(params), R0, R2, Evaluation::Clamped);
}

/// Samples the simplex R0, R2 >= 0, R0 + R2 <= 1 on an n x n lattice.
inline std::vector<FieldSample> vector_field_grid(const ModelParams& params, std::size_t n) {
  detail::require_three_levels(params);
  if (n < 2) throw InvalidArgument("vector field resolution must be at least 2");
  const Model model(params);
  std::vector<FieldSample> out;
  const double step = 1.0 / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j + i < n; ++j) {
      const double R0 = static_cast<double>(i) * step;
      const double R2 = j + i == n - 1 ? 1.0 - R0 : static_cast<double>(j) * step;
      const auto d = detail::reduced3_unchecked(model, R0, R2, Evaluation::Clamped);
      out.push_back({R0, R2, d[0], d[1]});
    }
  }
  return out;
}

/// Finite-difference Jacobian of the full right-hand side. Uses the unclamped
/// formulas so that points on the simplex boundary are differentiated smoothly.
inline Matrix model_jacobian(const CommunityState& state, const ModelParams& params, double h = 1e-6) {
  const Model model(params);
  return jacobian([&](std::span<const double> y) { return model.rhs(y, Evaluation::Raw); }, state.data(), h);
}

inline Matrix reduced3_jacobian(double R0, double R2, const ModelParams& params, double h = 1e-6) {
  detail::require_three_levels(params);
  const Model model(params);
  const std::array<double, 2> x{R0, R2};
  return jacobian(
      [&](std::span<const double> p) {
        const auto d = detail::reduced3_unchecked(model, p[0], p[1], Evaluation::Raw);
        return std::vector<double>{d[0], d[1]};
      },
      x, h);
}

namespace detail {

inline void classify(StabilityReport& rep) {
  for (const auto& ev : rep.eigenvalues) {
    if (std::abs(ev.real()) <= kCriticalEps)
      ++rep.critical;
    else if (ev.real() < 0.0)
      ++rep.stable;
    else
      ++rep.unstable;
  }
}

}  // namespace detail

inline StabilityReport reduced3_stability(double R0, double R2, const ModelParams& params, double h = 1e-6) {
  StabilityReport rep;
  rep.eigenvalues = eigenvalues(reduced3_jacobian(R0, R2, params, h));
  const auto d = reduced3_rhs(R0, R2, params);
  rep.residual = std::max(std::abs(d[0]), std::abs(d[1]));
  const std::array<double, 3> y{R0, 1.0 - R0 - R2, R2};
  rep.pc_at_point = Model(params).overall_pc(y);
  detail::classify(rep);
  return rep;
}

/// Linearization of the full system. The conserved group sums contribute one
/// zero eigenvalue per group in addition to any critical directions.
inline StabilityReport stability(const CommunityState& state, const ModelParams& params, double h = 1e-6) {
  const Model model(params);
  StabilityReport rep;
  rep.eigenvalues = eigenvalues(model_jacobian(state, params, h));
  rep.residual = sup_norm(model.rhs(state.data()));
  rep.pc_at_point = model.overall_pc(state.data());
  detail::classify(rep);
  return rep;
}

}  // namespace repnet
