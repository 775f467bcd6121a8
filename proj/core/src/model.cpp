#include "gcrf/model.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "gcrf/errors.hpp"

namespace gcrf {

namespace {

std::string dims(Index r, Index c) { return std::to_string(r) + "x" + std::to_string(c); }

void check_compatible(const SufficientStats& stats, const ModelParams& params) {
  if (params.lambda.rows() != stats.p() || params.lambda.cols() != stats.p() ||
      params.theta.rows() != stats.n() || params.theta.cols() != stats.p()) {
    throw DimensionMismatch("model (Λ " + dims(params.lambda.rows(), params.lambda.cols()) +
                            ", Θ " + dims(params.theta.rows(), params.theta.cols()) +
                            ") does not match statistics with n=" + std::to_string(stats.n()) +
                            ", p=" + std::to_string(stats.p()));
  }
}

}  // namespace

double Gradients::norm() const { return std::sqrt(squared_norm()); }

ModelParams ModelParams::initial(Index n, Index p) {
  return {Matrix::Identity(p, p), Matrix::Zero(n, p)};
}

void ModelParams::validate() const {
  if (lambda.rows() != lambda.cols()) {
    throw DimensionMismatch("Λ must be square, got " + dims(lambda.rows(), lambda.cols()));
  }
  if (theta.cols() != lambda.rows()) {
    throw DimensionMismatch("Θ must have p=" + std::to_string(lambda.rows()) + " columns, got " +
                            std::to_string(theta.cols()));
  }
  if (!lambda.allFinite() || !theta.allFinite()) throw InvalidArgument("non-finite parameters");
  if (max_asymmetry(lambda) > kSymmetryTolerance) throw InvalidArgument("Λ is not symmetric");
  if (!is_positive_definite(lambda)) throw NotPositiveDefinite("Λ is not positive definite");
}

void SufficientStats::validate() const {
  const Index p_ = s_yy.rows();
  const Index n_ = s_xx.rows();
  if (s_yy.cols() != p_ || s_xx.cols() != n_ || s_yx.rows() != p_ || s_yx.cols() != n_) {
    throw DimensionMismatch("inconsistent statistic shapes: s_yy " + dims(s_yy.rows(), s_yy.cols()) +
                            ", s_yx " + dims(s_yx.rows(), s_yx.cols()) + ", s_xx " +
                            dims(s_xx.rows(), s_xx.cols()));
  }
  if (m < 1) throw InvalidArgument("sample count must be positive");
  if (!s_yy.allFinite() || !s_yx.allFinite() || !s_xx.allFinite()) {
    throw InvalidArgument("non-finite statistics");
  }
}

void Dataset::validate() const {
  if (x.rows() != y.rows()) {
    throw DimensionMismatch("X has " + std::to_string(x.rows()) + " rows but Y has " +
                            std::to_string(y.rows()));
  }
  if (!x.allFinite() || !y.allFinite()) throw InvalidArgument("dataset has non-finite entries");
}

SufficientStats compute_stats(const Dataset& data) {
  data.validate();
  const Index m = data.samples();
  if (m < 1) throw InvalidArgument("compute_stats needs at least one sample");
  const double inv_m = 1.0 / static_cast<double>(m);
  SufficientStats stats;
  stats.s_yy = symmetrize(inv_m * (data.y.transpose() * data.y));
  stats.s_yx = inv_m * (data.y.transpose() * data.x);
  stats.s_xx = symmetrize(inv_m * (data.x.transpose() * data.x));
  stats.m = m;
  return stats;
}

Dataset center_columns(const Dataset& data) {
  data.validate();
  Dataset out = data;
  if (data.samples() == 0) return out;
  out.x.rowwise() -= data.x.colwise().mean();
  out.y.rowwise() -= data.y.colwise().mean();
  return out;
}

double objective(const SufficientStats& stats, const ModelParams& params,
                 const SpdFactor& lambda_factor) {
  check_compatible(stats, params);
  const Matrix& theta = params.theta;
  const Matrix coupled = theta.transpose() * stats.s_xx * theta;  // Θᵀ S_xx Θ
  return -lambda_factor.log_det() + trace_of_product(stats.s_yy, params.lambda) +
         2.0 * trace_of_product(stats.s_yx, theta) + lambda_factor.solve(coupled).trace();
}

double objective(const SufficientStats& stats, const ModelParams& params) {
  check_compatible(stats, params);
  return objective(stats, params, SpdFactor(params.lambda));
}

Gradients gradients(const SufficientStats& stats, const ModelParams& params) {
  check_compatible(stats, params);
  const SpdFactor factor(params.lambda);
  // K = Θ Λ⁻¹ (n×p)
  const Matrix k = factor.solve(Matrix(params.theta.transpose())).transpose();
  Gradients g;
  g.lambda = symmetrize(-factor.inverse() + stats.s_yy - k.transpose() * stats.s_xx * k);
  g.theta = 2.0 * stats.s_yx.transpose() + 2.0 * stats.s_xx * k;
  return g;
}

Vector predict(const ModelParams& params, const Vector& x) {
  if (x.size() != params.n()) {
    throw DimensionMismatch("input has " + std::to_string(x.size()) + " entries, model expects n=" +
                            std::to_string(params.n()));
  }
  const SpdFactor factor(params.lambda);
  return -factor.solve(Vector(params.theta.transpose() * x));
}

Matrix predict(const ModelParams& params, const Matrix& x_rows) {
  if (x_rows.cols() != params.n()) {
    throw DimensionMismatch("input has " + std::to_string(x_rows.cols()) +
                            " columns, model expects n=" + std::to_string(params.n()));
  }
  const SpdFactor factor(params.lambda);
  // Row i of the result is (-Λ⁻¹ Θᵀ x_i)ᵀ.
  return -factor.solve(Matrix(params.theta.transpose() * x_rows.transpose())).transpose();
}

double default_ridge(const SufficientStats& stats) {
  const Index n = stats.n();
  if (n == 0) return 0.0;
  const Eigen::SelfAdjointEigenSolver<Matrix> eig(stats.s_xx, Eigen::EigenvaluesOnly);
  const double largest = std::max(eig.eigenvalues().maxCoeff(), 0.0);
  const bool singular = eig.eigenvalues().minCoeff() <= 1e-12 * std::max(1.0, largest);
  if (!singular) return 0.0;
  const double trace = stats.s_xx.trace();
  return trace > 0.0 ? 1e-8 * trace / static_cast<double>(n) : 1e-8;
}

ModelParams closed_form_mle(const SufficientStats& stats, double ridge) {
  stats.validate();
  if (!(ridge >= 0.0)) throw InvalidArgument("ridge must be nonnegative");
  const Index n = stats.n();
  const Matrix regularized = stats.s_xx + ridge * Matrix::Identity(n, n);
  const auto sxx = SpdFactor::try_compute(regularized);
  if (!sxx) throw DegenerateData("S_xx + ridge·I is singular; pass a positive ridge");

  const Matrix b = sxx->solve(Matrix(stats.s_yx.transpose()));  // (S_xx + rI)⁻¹ S_yxᵀ
  const Matrix schur = symmetrize(stats.s_yy - stats.s_yx * b);
  const auto schur_factor = SpdFactor::try_compute(schur);
  if (!schur_factor) {
    throw DegenerateData("residual output covariance is not positive definite");
  }
  ModelParams out;
  out.lambda = symmetrize(schur_factor->inverse());
  out.theta = -b * out.lambda;
  return out;
}

ModelParams closed_form_mle(const SufficientStats& stats) {
  return closed_form_mle(stats, default_ridge(stats));
}

}  // namespace gcrf
