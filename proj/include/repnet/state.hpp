#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "repnet/error.hpp"
#include "repnet/params.hpp"

namespace repnet {

/// Proportions of members per (group, reputation level), stored group-major:
/// R_0..R_L, then Q_0..Q_L, then U_0..U_L for the variants that have them.
class CommunityState {
 public:
  CommunityState() = default;
  CommunityState(std::size_t groups, std::size_t levels)
      : groups_(groups), levels_(levels), data_(groups * levels, 0.0) {}
  CommunityState(std::size_t groups, std::size_t levels, std::vector<double> data)
      : groups_(groups), levels_(levels), data_(std::move(data)) {
    if (data_.size() != groups_ * levels_) throw InvalidArgument("state vector has the wrong length");
  }

  static CommunityState zeros(const ModelParams& params) { return {params.groups(), params.levels()}; }

  std::size_t groups() const noexcept { return groups_; }
  std::size_t levels() const noexcept { return levels_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool has(Group g) const noexcept { return static_cast<std::size_t>(g) < groups_; }

  std::span<double> group(Group g) {
    if (!has(g)) throw InvalidArgument("state has no " + std::string(to_string(g)) + " group");
    return {data_.data() + static_cast<std::size_t>(g) * levels_, levels_};
  }
  std::span<const double> group(Group g) const {
    if (!has(g)) throw InvalidArgument("state has no " + std::string(to_string(g)) + " group");
    return {data_.data() + static_cast<std::size_t>(g) * levels_, levels_};
  }

  std::span<const double> R() const { return group(Group::Regular); }
  std::span<const double> Q() const { return group(Group::Clique); }
  std::span<const double> U() const { return group(Group::AntiClique); }

  double& at(Group g, std::size_t k) { return group(g)[k]; }
  double at(Group g, std::size_t k) const { return group(g)[k]; }

  double group_sum(Group g) const {
    auto v = group(g);
    return std::accumulate(v.begin(), v.end(), 0.0);
  }

  std::vector<double>& data() noexcept { return data_; }
  const std::vector<double>& data() const noexcept { return data_; }

  friend bool operator==(const CommunityState&, const CommunityState&) = default;

 private:
  std::size_t groups_ = 0;
  std::size_t levels_ = 0;
  std::vector<double> data_;
};

/// Largest |sum(group) - group_fraction| over the groups present.
inline double conservation_error(const CommunityState& s, const ModelParams& params) {
  double worst = 0.0;
  for (std::size_t g = 0; g < s.groups(); ++g) {
    const auto grp = static_cast<Group>(g);
    worst = std::max(worst, std::abs(s.group_sum(grp) - params.group_fraction(grp)));
  }
  return worst;
}

/// Checks shape, entry range and group sums. `tol` loosens the entry range to
/// [-tol, 1+tol] and bounds the group-sum deviation.
inline void validate_state(const CommunityState& s, const ModelParams& params, double tol = 1e-9) {
  if (s.groups() != params.groups() || s.levels() != params.levels())
    throw InvalidArgument("state shape does not match the model variant and grid");
  for (double v : s.data()) {
    if (!(v >= -tol && v <= 1.0 + tol)) throw InvalidArgument("state entry outside [0,1]: " + std::to_string(v));
  }
  for (std::size_t g = 0; g < s.groups(); ++g) {
    const auto grp = static_cast<Group>(g);
    const double want = params.group_fraction(grp);
    const double got = s.group_sum(grp);
    if (std::abs(got - want) > tol)
      throw InvalidArgument("sum of " + std::string(to_string(grp)) + " proportions is " + std::to_string(got) +
                            ", expected " + std::to_string(want));
  }
}

/// All of every group's mass at the given level index.
inline CommunityState concentrated_state(const ModelParams& params, std::size_t level) {
  if (level >= params.levels()) throw InvalidArgument("level index outside the grid");
  CommunityState s = CommunityState::zeros(params);
  for (std::size_t g = 0; g < s.groups(); ++g) {
    const auto grp = static_cast<Group>(g);
    s.at(grp, level) = params.group_fraction(grp);
  }
  return s;
}

/// Total-variation distance 0.5 * sum |a_i - b_i| over all entries.
inline double total_variation(const CommunityState& a, const CommunityState& b) {
  if (a.size() != b.size()) throw InvalidArgument("states differ in shape");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::abs(a.data()[i] - b.data()[i]);
  return 0.5 * acc;
}

}  // namespace repnet
