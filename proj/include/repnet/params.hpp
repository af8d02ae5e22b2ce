#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>

#include "repnet/error.hpp"
#include "repnet/grid.hpp"

namespace repnet {

enum class Variant { NoClique, OneClique, TwoCliques };

enum class Group { Regular = 0, Clique = 1, AntiClique = 2 };

inline constexpr std::array<Group, 3> kAllGroups{Group::Regular, Group::Clique, Group::AntiClique};

inline std::size_t group_count(Variant v) noexcept {
  switch (v) {
    case Variant::NoClique: return 1;
    case Variant::OneClique: return 2;
    case Variant::TwoCliques: return 3;
  }
  return 1;
}

inline std::string_view to_string(Variant v) noexcept {
  switch (v) {
    case Variant::NoClique: return "no_clique";
    case Variant::OneClique: return "one_clique";
    case Variant::TwoCliques: return "two_cliques";
  }
  return "?";
}

inline std::string_view to_string(Group g) noexcept {
  switch (g) {
    case Group::Regular: return "regular";
    case Group::Clique: return "clique";
    case Group::AntiClique: return "anticlique";
  }
  return "?";
}

/// Curvatures of the authenticity a(r) and evaluation skill c(r) curves.
struct BehaviorParams {
  double alpha = 0.0;
  double sigma = 0.0;

  void validate() const {
    detail::require_curvature(alpha, "alpha");
    detail::require_curvature(sigma, "sigma");
  }
};

struct CliqueParams {
  double f_cl = 0.0;      // clique share of the community
  double f_acl = 0.0;     // anti-clique share
  double p_lambda = 0.0;  // share of regular documents on each agenda side
  double gamma = 1.0;     // attenuation of clique authenticity

  void validate() const {
    detail::require_unit(f_cl, "f_cl");
    detail::require_unit(f_acl, "f_acl");
    detail::require_unit(gamma, "gamma");
    if (!(p_lambda >= 0.0 && p_lambda <= 0.5)) throw InvalidArgument("p_lambda must lie in [0,0.5]");
    if (f_cl + f_acl > 1.0 + 1e-12) throw InvalidArgument("f_cl + f_acl must not exceed 1");
  }
};

struct ModelParams {
  Variant variant = Variant::NoClique;
  ReputationGrid grid{10};
  BehaviorParams behavior{};
  CliqueParams clique{};

  std::size_t groups() const noexcept { return group_count(variant); }
  std::size_t levels() const noexcept { return grid.size(); }

  /// Fixed total mass of a group: 1 - f_cl - f_acl, f_cl or f_acl.
  double group_fraction(Group g) const noexcept {
    switch (g) {
      case Group::Regular: return 1.0 - clique.f_cl - clique.f_acl;
      case Group::Clique: return clique.f_cl;
      case Group::AntiClique: return clique.f_acl;
    }
    return 0.0;
  }

  void validate() const {
    behavior.validate();
    clique.validate();
    if (variant == Variant::NoClique && (clique.f_cl != 0.0 || clique.f_acl != 0.0))
      throw InvalidArgument("variant no_clique requires f_cl = f_acl = 0");
    if (variant == Variant::OneClique && clique.f_acl != 0.0)
      throw InvalidArgument("variant one_clique requires f_acl = 0");
  }
};

inline ModelParams no_clique_params(std::size_t steps, double alpha, double sigma) {
  ModelParams p{Variant::NoClique, ReputationGrid(steps), {alpha, sigma}, {}};
  p.validate();
  return p;
}

inline ModelParams one_clique_params(std::size_t steps, double alpha, double sigma, double f_cl, double p_lambda,
                                     double gamma) {
  ModelParams p{Variant::OneClique, ReputationGrid(steps), {alpha, sigma}, {f_cl, 0.0, p_lambda, gamma}};
  p.validate();
  return p;
}

inline ModelParams two_cliques_params(std::size_t steps, double alpha, double sigma, double f_cl, double f_acl,
                                      double p_lambda, double gamma) {
  ModelParams p{Variant::TwoCliques, ReputationGrid(steps), {alpha, sigma}, {f_cl, f_acl, p_lambda, gamma}};
  p.validate();
  return p;
}

}  // namespace repnet
