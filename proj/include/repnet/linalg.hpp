#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "repnet/error.hpp"

namespace repnet {

using Matrix = Eigen::MatrixXd;
using Complex = std::complex<double>;

/// Central-difference Jacobian of f at x, one column per perturbed coordinate.
/// `f` maps std::span<const double> to std::vector<double>.
template <class F>
Matrix jacobian(F&& f, std::span<const double> x, double h = 1e-6) {
  if (!(h > 0.0)) throw InvalidArgument("finite-difference step must be positive");
  std::vector<double> probe(x.begin(), x.end());
  const std::vector<double> f0 = f(std::span<const double>(probe));
  Matrix J(static_cast<Eigen::Index>(f0.size()), static_cast<Eigen::Index>(x.size()));
  for (std::size_t j = 0; j < x.size(); ++j) {
    probe[j] = x[j] + h;
    const std::vector<double> fp = f(std::span<const double>(probe));
    probe[j] = x[j] - h;
    const std::vector<double> fm = f(std::span<const double>(probe));
    probe[j] = x[j];
    for (std::size_t i = 0; i < f0.size(); ++i)
      J(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = (fp[i] - fm[i]) / (2.0 * h);
  }
  return J;
}

inline void sort_by_real_part(std::vector<Complex>& ev) {
  std::sort(ev.begin(), ev.end(), [](const Complex& a, const Complex& b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
}

/// Spectrum of a 2x2 matrix from its trace and determinant.
inline std::vector<Complex> eigenvalues_2x2(double a, double b, double c, double d) {
  const double tr = a + d;
  const double det = a * d - b * c;
  const double disc = 0.25 * tr * tr - det;
  std::vector<Complex> ev;
  if (disc >= 0.0) {
    const double s = std::sqrt(disc);
    // Avoid cancellation in the smaller root.
    const double big = 0.5 * tr + (tr >= 0.0 ? s : -s);
    const double small = big != 0.0 ? det / big : 0.5 * tr - (tr >= 0.0 ? s : -s);
    ev = {Complex(big, 0.0), Complex(small, 0.0)};
  } else {
    const double s = std::sqrt(-disc);
    ev = {Complex(0.5 * tr, -s), Complex(0.5 * tr, s)};
  }
  sort_by_real_part(ev);
  return ev;
}

/// Eigenvalues of a small dense square matrix, sorted by real part.
inline std::vector<Complex> eigenvalues(const Matrix& m) {
  if (m.rows() != m.cols()) throw InvalidArgument("eigenvalues: matrix must be square");
  if (m.rows() == 0) return {};
  if (m.rows() > 64) throw InvalidArgument("eigenvalues: dimension above 64 not supported");
  if (m.rows() == 1) return {Complex(m(0, 0), 0.0)};
  if (m.rows() == 2) return eigenvalues_2x2(m(0, 0), m(0, 1), m(1, 0), m(1, 1));
  Eigen::EigenSolver<Matrix> solver(m, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigenvalues: QR iteration did not converge");
  std::vector<Complex> ev(solver.eigenvalues().begin(), solver.eigenvalues().end());
  sort_by_real_part(ev);
  return ev;
}

}  // namespace repnet
