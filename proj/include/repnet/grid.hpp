#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "repnet/error.hpp"

namespace repnet {

/// Uniform reputation levels r_k = k/L, k = 0..L.
class ReputationGrid {
 public:
  explicit ReputationGrid(std::size_t steps) : steps_(steps) {
    if (steps == 0) throw InvalidArgument("reputation grid needs at least one step (L >= 1)");
    levels_.resize(steps + 1);
    for (std::size_t k = 0; k <= steps; ++k) levels_[k] = static_cast<double>(k) / static_cast<double>(steps);
    levels_.back() = 1.0;
  }

  std::size_t steps() const noexcept { return steps_; }
  std::size_t size() const noexcept { return steps_ + 1; }
  double spacing() const noexcept { return 1.0 / static_cast<double>(steps_); }
  double operator[](std::size_t k) const { return levels_[k]; }
  std::span<const double> levels() const noexcept { return levels_; }

  /// Index of the level closest to reputation r (ties round up).
  std::size_t nearest_level(double r) const {
    if (!(r >= 0.0 && r <= 1.0)) throw InvalidArgument("reputation must lie in [0,1]");
    return static_cast<std::size_t>(std::floor(r * static_cast<double>(steps_) + 0.5));
  }

  friend bool operator==(const ReputationGrid& a, const ReputationGrid& b) { return a.steps_ == b.steps_; }

 private:
  std::size_t steps_;
  std::vector<double> levels_;
};

inline ReputationGrid make_grid(std::size_t steps) { return ReputationGrid(steps); }

namespace detail {

inline void require_unit(double v, const char* what) {
  if (!(v >= 0.0 && v <= 1.0)) throw InvalidArgument(std::string(what) + " must lie in [0,1]");
}

inline void require_curvature(double v, const char* what) {
  if (!(v >= -1.0 && v <= 1.0)) throw InvalidArgument(std::string(what) + " must lie in [-1,1]");
}

// Quadratic through (0,0) and (1,1) with curvature `k`.
inline double quadratic_behavior(double r, double k) noexcept { return r * (1.0 + k * (1.0 - r)); }

}  // namespace detail

/// Probability that a member with reputation r submits an authentic document.
inline double authenticity_prob(double r, double alpha) {
  detail::require_unit(r, "reputation");
  detail::require_curvature(alpha, "alpha");
  return detail::quadratic_behavior(r, alpha);
}

/// Probability that a member with reputation r evaluates a document correctly.
inline double correctness_prob(double r, double sigma) {
  detail::require_unit(r, "reputation");
  detail::require_curvature(sigma, "sigma");
  return detail::quadratic_behavior(r, sigma);
}

/// Probability that at least two of three independent evaluators, each
/// right with probability p, are right: p^3 + 3p^2(1-p) = p^2(3-2p).
inline double majority_prob(double p) {
  detail::require_unit(p, "probability");
  return p * p * (3.0 - 2.0 * p);
}

}  // namespace repnet
