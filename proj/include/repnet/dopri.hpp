#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "repnet/error.hpp"

namespace repnet {

/// Controls for the adaptive Dormand-Prince 5(4) integrator.
struct IntegratorSettings {
  double abs_tol = 1e-7;
  double rel_tol = 1e-7;
  double t_end = 100.0;
  double initial_step = 1e-3;
  double max_step = 0.0;  // 0 selects t_end / 10
  double sample_interval = 1.0;
  double equilibrium_eps = 1e-10;

  double effective_max_step() const noexcept { return max_step > 0.0 ? max_step : t_end / 10.0; }

  void validate() const {
    if (!(abs_tol > 0.0 && rel_tol > 0.0)) throw InvalidArgument("tolerances must be positive");
    if (!(t_end > 0.0)) throw InvalidArgument("t_end must be positive");
    if (!(initial_step > 0.0)) throw InvalidArgument("initial_step must be positive");
    if (max_step < 0.0) throw InvalidArgument("max_step must be positive");
    if (!(sample_interval > 0.0 && sample_interval <= t_end))
      throw InvalidArgument("sample_interval must lie in (0, t_end]");
    if (!(equilibrium_eps > 0.0)) throw InvalidArgument("equilibrium_eps must be positive");
  }
};

/// Embedded explicit Runge-Kutta pair of Dormand and Prince (orders 5 and 4),
/// first-same-as-last, with a PI step-size controller.
class DormandPrince {
 public:
  // f(t, y, dy)
  using Rhs = std::function<void(double, std::span<const double>, std::span<double>)>;
  // Called after the initial point and after every accepted step with
  // (t, y, at_sample). Returning false stops the integration.
  using Observer = std::function<bool(double, std::span<const double>, bool)>;

  struct Stats {
    std::size_t accepted = 0;
    std::size_t rejected = 0;
    std::size_t evaluations = 0;
    double t_final = 0.0;
    bool stopped_early = false;
  };

  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                          a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                          b6 = 11.0 / 84;
  // b - b*, the difference between the 5th and 4th order weights.
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                          e6 = 22.0 / 525, e7 = -1.0 / 40;

  explicit DormandPrince(IntegratorSettings settings) : settings_(settings) { settings_.validate(); }

  const IntegratorSettings& settings() const noexcept { return settings_; }

  /// One step of size h from (t, y) whose derivative is k1. Fills y_new with
  /// the 5th-order solution, err with the embedded error estimate and k7 with
  /// f(t + h, y_new).
  void single_step(const Rhs& f, double t, std::span<const double> y, std::span<const double> k1, double h,
                   std::span<double> y_new, std::span<double> err, std::span<double> k7) {
    const std::size_t n = y.size();
    resize(n);
    auto stage = [&](double ct, auto&& combine, std::vector<double>& k) {
      for (std::size_t i = 0; i < n; ++i) tmp_[i] = y[i] + h * combine(i);
      f(t + ct * h, tmp_, k);
    };
    stage(c2, [&](std::size_t i) { return a21 * k1[i]; }, k2_);
    stage(c3, [&](std::size_t i) { return a31 * k1[i] + a32 * k2_[i]; }, k3_);
    stage(c4, [&](std::size_t i) { return a41 * k1[i] + a42 * k2_[i] + a43 * k3_[i]; }, k4_);
    stage(c5, [&](std::size_t i) { return a51 * k1[i] + a52 * k2_[i] + a53 * k3_[i] + a54 * k4_[i]; }, k5_);
    stage(1.0, [&](std::size_t i) { return a61 * k1[i] + a62 * k2_[i] + a63 * k3_[i] + a64 * k4_[i] + a65 * k5_[i]; },
          k6_);
    for (std::size_t i = 0; i < n; ++i)
      y_new[i] = y[i] + h * (b1 * k1[i] + b3 * k3_[i] + b4 * k4_[i] + b5 * k5_[i] + b6 * k6_[i]);
    f(t + h, y_new, k7);
    for (std::size_t i = 0; i < n; ++i)
      err[i] = h * (e1 * k1[i] + e3 * k3_[i] + e4 * k4_[i] + e5 * k5_[i] + e6 * k6_[i] + e7 * k7[i]);
  }

  /// Integrates from (0, y0) to settings.t_end. The observer sees t = 0, every
  /// multiple of sample_interval (steps are shortened to land on them) and t_end.
  Stats integrate(const Rhs& f, std::vector<double> y, const Observer& observe) {
    const std::size_t n = y.size();
    const double t_end = settings_.t_end;
    const double h_max = settings_.effective_max_step();
    const double h_min = 1e-14 * t_end;
    Stats stats;

    std::vector<double> k1(n), k7(n), y_new(n), err(n);
    f(0.0, y, k1);
    ++stats.evaluations;
    if (!observe(0.0, y, true)) {
      stats.stopped_early = true;
      return stats;
    }

    double t = 0.0;
    double h = std::min(settings_.initial_step, h_max);
    double err_prev = 1e-4;
    bool last_rejected = false;
    std::size_t sample_index = 1;
    auto sample_time = [&](std::size_t i) { return std::min(t_end, static_cast<double>(i) * settings_.sample_interval); };
    double next_sample = sample_time(sample_index);

    while (t < t_end) {
      bool hits_sample = false;
      double h_try = h;
      if (t + h_try >= next_sample) {
        h_try = next_sample - t;
        hits_sample = true;
      }
      if (h_try < h_min) throw IntegrationError("step size underflow", t, y);

      single_step(f, t, y, k1, h_try, y_new, err, k7);
      stats.evaluations += 6;
      const double e = error_norm(y, y_new, err);

      if (e <= 1.0) {
        t = hits_sample ? next_sample : t + h_try;
        y.swap(y_new);
        k1.swap(k7);
        ++stats.accepted;

        const double err_safe = std::max(e, 1e-10);
        double fac = kSafety * std::pow(err_safe, -kAlpha) * std::pow(err_prev, kBeta);
        fac = std::clamp(fac, kMinFactor, kMaxFactor);
        if (last_rejected) fac = std::min(fac, 1.0);
        err_prev = std::max(e, 1e-4);
        last_rejected = false;
        // A step cut short to hit a sample time keeps the previous proposal.
        if (!(hits_sample && h_try < h)) h = std::min(h_max, h_try * fac);

        if (hits_sample) next_sample = sample_time(++sample_index);
        if (!observe(t, y, hits_sample)) {
          stats.stopped_early = true;
          break;
        }
      } else {
        ++stats.rejected;
        last_rejected = true;
        const double fac = std::max(kMinFactor, kSafety * std::pow(e, -0.2));
        h = h_try * fac;
      }
    }
    stats.t_final = t;
    return stats;
  }

 private:
  static constexpr double kSafety = 0.9;
  static constexpr double kMinFactor = 0.2;
  static constexpr double kMaxFactor = 5.0;
  static constexpr double kAlpha = 0.17;  // 1/5 - 0.75 * kBeta
  static constexpr double kBeta = 0.04;

  double error_norm(std::span<const double> y, std::span<const double> y_new, std::span<const double> err) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      const double scale = settings_.abs_tol + settings_.rel_tol * std::max(std::abs(y[i]), std::abs(y_new[i]));
      const double r = err[i] / scale;
      acc += r * r;
    }
    return std::sqrt(acc / static_cast<double>(y.size()));
  }

  void resize(std::size_t n) {
    if (tmp_.size() == n) return;
    for (auto* v : {&tmp_, &k2_, &k3_, &k4_, &k5_, &k6_}) v->assign(n, 0.0);
  }

  IntegratorSettings settings_;
  std::vector<double> tmp_, k2_, k3_, k4_, k5_, k6_;
};

}  // namespace repnet
