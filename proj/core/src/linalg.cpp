#include "gcrf/linalg.hpp"

#include <cmath>

#include "gcrf/errors.hpp"

namespace gcrf {

double max_asymmetry(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  return (a - a.transpose()).cwiseAbs().maxCoeff();
}

Matrix symmetrize(const Matrix& a) { return 0.5 * (a + a.transpose()); }

bool all_finite(const Matrix& a) { return a.allFinite(); }

bool SpdFactor::factorize(const Matrix& a, Eigen::LLT<Matrix>& llt) {
  if (a.rows() != a.cols() || a.rows() == 0 || !a.allFinite()) return false;
  llt.compute(a);
  if (llt.info() != Eigen::Success) return false;
  // LLT can report success on matrices that are only semidefinite up to
  // rounding; a zero or non-finite pivot still means "not PD".
  const auto diag = llt.matrixLLT().diagonal();
  return (diag.array() > 0.0).all() && diag.allFinite();
}

SpdFactor::SpdFactor(const Matrix& a) {
  if (!factorize(a, llt_)) throw NotPositiveDefinite();
}

std::optional<SpdFactor> SpdFactor::try_compute(const Matrix& a) {
  SpdFactor f;
  if (!factorize(a, f.llt_)) return std::nullopt;
  return f;
}

double SpdFactor::log_det() const {
  return 2.0 * llt_.matrixLLT().diagonal().array().log().sum();
}

Matrix SpdFactor::solve(const Matrix& b) const { return llt_.solve(b); }

Vector SpdFactor::solve(const Vector& b) const { return llt_.solve(b); }

Matrix SpdFactor::inverse() const { return llt_.solve(Matrix::Identity(size(), size())); }

Vector SpdFactor::inverse_factor_transpose_times(const Vector& z) const {
  return llt_.matrixU().solve(z);
}

Vector SpdFactor::factor_times(const Vector& z) const { return llt_.matrixL() * z; }

bool is_positive_definite(const Matrix& a) { return SpdFactor::try_compute(a).has_value(); }

double log_det_pd(const Matrix& a) {
  if (a.rows() != a.cols()) throw DimensionMismatch("log_det_pd: matrix is not square");
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  if (max_asymmetry(a) > kSymmetryTolerance * scale) {
    throw InvalidArgument("log_det_pd: matrix is not symmetric");
  }
  return SpdFactor(a).log_det();
}

}  // namespace gcrf
