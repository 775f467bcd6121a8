#pragma once

// Random instances and finite-difference oracles shared by the test
// binaries. Nothing here calls the analytic gradient code.

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include "gcrf/model.hpp"
#include "gcrf/types.hpp"

namespace gcrf::testing {

inline Matrix gaussian_matrix(std::mt19937_64& rng, Index rows, Index cols, double scale = 1.0) {
  std::normal_distribution<double> normal(0.0, scale);
  Matrix m(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) m(i, j) = normal(rng);
  }
  return m;
}

/// A Aᵀ/p + floor·I
inline Matrix random_spd(std::mt19937_64& rng, Index p, double floor = 0.5) {
  const Matrix a = gaussian_matrix(rng, p, p);
  Matrix s = a * a.transpose() / static_cast<double>(p) + floor * Matrix::Identity(p, p);
  return 0.5 * (s + s.transpose());
}

/// Statistics of a random dataset with enough samples to be nondegenerate.
inline SufficientStats random_stats(std::mt19937_64& rng, Index n, Index p, Index m = 0) {
  if (m == 0) m = 3 * (n + p) + 10;
  Dataset data{gaussian_matrix(rng, m, n), Matrix()};
  data.y = data.x * gaussian_matrix(rng, n, p, 0.5) + gaussian_matrix(rng, m, p, 0.7);
  return compute_stats(data);
}

inline ModelParams random_params(std::mt19937_64& rng, Index n, Index p) {
  return {random_spd(rng, p), gaussian_matrix(rng, n, p, 0.5)};
}

/// Central-difference derivative along symmetric perturbations of Λ:
/// entry (i, j) holds d/dt f(Λ + t(e_i e_jᵀ + e_j e_iᵀ)) for i ≠ j and
/// d/dt f(Λ + t e_i e_iᵀ) on the diagonal. For a symmetric gradient G this
/// equals 2·G_ij off the diagonal and G_ii on it.
inline Matrix fd_symmetric(const std::function<double(const Matrix&)>& f, const Matrix& at,
                           double h = 1e-5) {
  const Index p = at.rows();
  Matrix d(p, p);
  for (Index i = 0; i < p; ++i) {
    for (Index j = 0; j <= i; ++j) {
      Matrix e = Matrix::Zero(p, p);
      e(i, j) = 1.0;
      e(j, i) = 1.0;
      d(i, j) = d(j, i) = (f(at + h * e) - f(at - h * e)) / (2.0 * h);
    }
  }
  return d;
}

/// Plain entrywise central differences.
inline Matrix fd_entrywise(const std::function<double(const Matrix&)>& f, const Matrix& at,
                           double h = 1e-5) {
  Matrix d(at.rows(), at.cols());
  for (Index i = 0; i < at.rows(); ++i) {
    for (Index j = 0; j < at.cols(); ++j) {
      Matrix plus = at, minus = at;
      plus(i, j) += h;
      minus(i, j) -= h;
      d(i, j) = (f(plus) - f(minus)) / (2.0 * h);
    }
  }
  return d;
}

/// Maps a symmetric gradient to what fd_symmetric measures.
inline Matrix symmetric_directional(const Matrix& grad) {
  Matrix d = 2.0 * grad;
  d.diagonal() = grad.diagonal();
  return d;
}

/// max_ij |a - b| / max(|a|, |b|, 1)
inline double max_relative_error(const Matrix& a, const Matrix& b) {
  double worst = 0.0;
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      const double scale = std::max({std::abs(a(i, j)), std::abs(b(i, j)), 1.0});
      worst = std::max(worst, std::abs(a(i, j) - b(i, j)) / scale);
    }
  }
  return worst;
}

inline SufficientStats scalar_stats(double s_xx, double s_yy, double s_yx) {
  return {Matrix::Constant(1, 1, s_yy), Matrix::Constant(1, 1, s_yx), Matrix::Constant(1, 1, s_xx),
          1};
}

}  // namespace gcrf::testing
