#pragma once

#include <optional>

#include "gcrf/types.hpp"

namespace gcrf {

inline constexpr double kSymmetryTolerance = 1e-10;

/// max |a_ij - a_ji|. Zero for non-square input is meaningless; callers
/// check shape first.
double max_asymmetry(const Matrix& a);

/// (A + Aᵀ) / 2
Matrix symmetrize(const Matrix& a);

bool all_finite(const Matrix& a);

/// Cholesky factorization of a symmetric positive-definite matrix. Every
/// application of an inverse in the library goes through `solve`.
class SpdFactor {
 public:
  /// Throws NotPositiveDefinite when the factorization fails.
  explicit SpdFactor(const Matrix& a);

  /// Empty when `a` is not square, has non-finite entries, or is not
  /// positive definite.
  static std::optional<SpdFactor> try_compute(const Matrix& a);

  Index size() const noexcept { return llt_.rows(); }
  double log_det() const;

  Matrix solve(const Matrix& b) const;
  Vector solve(const Vector& b) const;

  /// A⁻¹ obtained as solve(I); only for results that genuinely need the
  /// inverse as a value (e.g. the -Λ⁻¹ gradient term).
  Matrix inverse() const;

  /// L⁻ᵀ z, whose covariance is A⁻¹ when z ~ N(0, I).
  Vector inverse_factor_transpose_times(const Vector& z) const;

  /// L z, whose covariance is A when z ~ N(0, I).
  Vector factor_times(const Vector& z) const;

 private:
  SpdFactor() = default;
  static bool factorize(const Matrix& a, Eigen::LLT<Matrix>& llt);

  Eigen::LLT<Matrix> llt_;
};

bool is_positive_definite(const Matrix& a);

/// log|A| through a symmetric factorization. Throws NotPositiveDefinite
/// instead of producing NaN, InvalidArgument for asymmetric input.
double log_det_pd(const Matrix& a);

/// Trace of A·B without forming the product.
inline double trace_of_product(const Matrix& a, const Matrix& b) {
  return a.cwiseProduct(b.transpose()).sum();
}

}  // namespace gcrf
