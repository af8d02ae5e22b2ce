#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "repnet/dopri.hpp"

using namespace repnet;

namespace {

// y' = A y with A = [[-0.5, 2], [-2, -0.5]]: a damped rotation with a closed-form solution.
void damped_rotation(double, std::span<const double> y, std::span<double> dy) {
  dy[0] = -0.5 * y[0] + 2.0 * y[1];
  dy[1] = -2.0 * y[0] - 0.5 * y[1];
}

std::array<double, 2> exact(double t) {
  const double d = std::exp(-0.5 * t);
  return {d * std::cos(2 * t), -d * std::sin(2 * t)};
}

}  // namespace

TEST(DormandPrince, TableauRowSumsMatchNodes) {
  using D = DormandPrince;
  EXPECT_NEAR(D::a21, D::c2, 1e-15);
  EXPECT_NEAR(D::a31 + D::a32, D::c3, 1e-15);
  EXPECT_NEAR(D::a41 + D::a42 + D::a43, D::c4, 1e-15);
  EXPECT_NEAR(D::a51 + D::a52 + D::a53 + D::a54, D::c5, 1e-14);
  EXPECT_NEAR(D::a61 + D::a62 + D::a63 + D::a64 + D::a65, 1.0, 1e-14);
  EXPECT_NEAR(D::b1 + D::b3 + D::b4 + D::b5 + D::b6, 1.0, 1e-15);
  EXPECT_NEAR(D::e1 + D::e3 + D::e4 + D::e5 + D::e6 + D::e7, 0.0, 1e-15);
}

TEST(DormandPrince, LocalErrorIsFifthOrder) {
  // One step from the exact solution: local error scales as h^6, so halving h
  // divides it by about 64.
  DormandPrince dp(IntegratorSettings{});
  std::vector<double> errs;
  for (double h : {0.2, 0.1, 0.05}) {
    std::vector<double> y{1.0, 0.0}, k1(2), y_new(2), err(2), k7(2);
    damped_rotation(0.0, y, k1);
    dp.single_step(damped_rotation, 0.0, y, k1, h, y_new, err, k7);
    const auto ex = exact(h);
    errs.push_back(std::hypot(y_new[0] - ex[0], y_new[1] - ex[1]));
  }
  for (std::size_t i = 1; i < errs.size(); ++i) {
    const double order = std::log2(errs[i - 1] / errs[i]);
    EXPECT_GT(order, 5.6);
    EXPECT_LT(order, 6.4);
  }
}

TEST(DormandPrince, GlobalErrorTracksTolerance) {
  double previous = 1.0;
  for (double tol : {1e-5, 1e-7, 1e-9}) {
    IntegratorSettings s;
    s.abs_tol = s.rel_tol = tol;
    s.t_end = 10.0;
    DormandPrince dp(s);
    std::vector<double> last;
    dp.integrate(damped_rotation, {1.0, 0.0}, [&](double, std::span<const double> y, bool) {
      last.assign(y.begin(), y.end());
      return true;
    });
    const auto ex = exact(10.0);
    const double err = std::hypot(last[0] - ex[0], last[1] - ex[1]);
    EXPECT_LT(err, 100 * tol);
    EXPECT_LT(err, previous);
    previous = err;
  }
}

TEST(DormandPrince, LandsExactlyOnSampleTimes) {
  IntegratorSettings s;
  s.t_end = 5.0;
  s.sample_interval = 0.5;
  DormandPrince dp(s);
  std::vector<double> samples;
  double last_t = -1.0;
  dp.integrate(damped_rotation, {1.0, 0.0}, [&](double t, std::span<const double>, bool at_sample) {
    EXPECT_GT(t, last_t);
    last_t = t;
    if (at_sample) samples.push_back(t);
    return true;
  });
  ASSERT_EQ(samples.size(), 11u);
  for (std::size_t i = 0; i < samples.size(); ++i) EXPECT_NEAR(samples[i], 0.5 * static_cast<double>(i), 1e-12);
  EXPECT_EQ(samples.back(), 5.0);
}

TEST(DormandPrince, ObserverCanStopEarly) {
  DormandPrince dp(IntegratorSettings{});
  const auto stats = dp.integrate(damped_rotation, {1.0, 0.0},
                                  [](double t, std::span<const double>, bool) { return t < 3.0; });
  EXPECT_TRUE(stats.stopped_early);
  EXPECT_LT(stats.t_final, 100.0);
}

TEST(DormandPrince, BlowUpReportsStepUnderflow) {
  // y' = y^2, y(0) = 1 has a pole at t = 1.
  IntegratorSettings s;
  s.t_end = 2.0;
  DormandPrince dp(s);
  try {
    dp.integrate([](double, std::span<const double> y, std::span<double> dy) { dy[0] = y[0] * y[0]; }, {1.0},
                 [](double, std::span<const double>, bool) { return true; });
    FAIL() << "expected IntegrationError";
  } catch (const IntegrationError& e) {
    EXPECT_NEAR(e.time(), 1.0, 1e-2);
    EXPECT_EQ(e.state().size(), 1u);
  }
}

TEST(DormandPrince, RejectsInvalidSettings) {
  IntegratorSettings s;
  s.abs_tol = 0.0;
  EXPECT_THROW(DormandPrince{s}, InvalidArgument);
  s = {};
  s.sample_interval = 200.0;
  EXPECT_THROW(DormandPrince{s}, InvalidArgument);
}
