#include "gcrf/datagen.hpp"

#include <random>

#include <Eigen/Eigenvalues>

#include "gcrf/errors.hpp"
#include "gcrf/linalg.hpp"
#include "gcrf/model.hpp"

namespace gcrf {

namespace {

constexpr double kMinLambdaEigenvalue = 0.1;

}  // namespace

GroundTruth sample_ground_truth(Index n, Index p, double diag_dominance, double theta_density,
                                std::uint64_t seed) {
  if (n < 1 || p < 1) throw InvalidArgument("n and p must be at least 1");
  if (!(diag_dominance >= 0.0)) throw InvalidArgument("diag_dominance must be nonnegative");
  if (!(theta_density > 0.0 && theta_density <= 1.0)) {
    throw InvalidArgument("theta_density must lie in (0, 1]");
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  std::bernoulli_distribution keep(theta_density);

  Matrix a(p, p);
  for (Index j = 0; j < p; ++j) {
    for (Index i = j; i < p; ++i) a(i, j) = a(j, i) = uniform(rng);
  }
  const Eigen::SelfAdjointEigenSolver<Matrix> eig(a, Eigen::EigenvaluesOnly);
  const double shift = std::max(0.0, kMinLambdaEigenvalue - eig.eigenvalues().minCoeff());

  GroundTruth truth;
  truth.params.lambda = a + (diag_dominance + shift) * Matrix::Identity(p, p);
  truth.params.theta = Matrix::Zero(n, p);
  for (Index j = 0; j < p; ++j) {
    for (Index i = 0; i < n; ++i) {
      // Draw both variates unconditionally so the stream layout does not
      // depend on the density.
      const bool nonzero = keep(rng);
      double value = uniform(rng);
      while (value == 0.0) value = uniform(rng);
      if (nonzero) truth.params.theta(i, j) = value;
    }
  }
  truth.sigma_x = Matrix::Identity(n, n);
  truth.seed = seed;
  return truth;
}

Dataset sample_dataset(const GroundTruth& truth, Index m, std::uint64_t seed) {
  if (m < 1) throw InvalidArgument("m must be at least 1");
  const ModelParams& params = truth.params;
  params.validate();
  const Index n = params.n();
  const Index p = params.p();

  const SpdFactor sigma_factor(truth.sigma_x);
  const SpdFactor lambda_factor(params.lambda);
  const SpdFactor noise_precision(2.0 * params.lambda);  // noise covariance (2Λ)⁻¹
  const Matrix mean_map = -lambda_factor.solve(Matrix(params.theta.transpose()));  // p×n

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  auto draw = [&](Index size) {
    Vector z(size);
    for (Index i = 0; i < size; ++i) z(i) = normal(rng);
    return z;
  };

  Dataset data{Matrix(m, n), Matrix(m, p)};
  for (Index row = 0; row < m; ++row) {
    const Vector x = sigma_factor.factor_times(draw(n));
    const Vector noise = noise_precision.inverse_factor_transpose_times(draw(p));
    data.x.row(row) = x.transpose();
    data.y.row(row) = (mean_map * x + noise).transpose();
  }
  return data;
}

SufficientStats population_stats(const GroundTruth& truth) {
  const ModelParams& params = truth.params;
  params.validate();
  const SpdFactor lambda_factor(params.lambda);
  const Matrix mean_map = -lambda_factor.solve(Matrix(params.theta.transpose()));  // p×n
  SufficientStats stats;
  stats.s_xx = truth.sigma_x;
  stats.s_yx = mean_map * truth.sigma_x;
  stats.s_yy = symmetrize(mean_map * truth.sigma_x * mean_map.transpose() +
                          0.5 * lambda_factor.inverse());
  stats.m = 1;
  return stats;
}

ModelParams objective_target(const GroundTruth& truth) {
  return closed_form_mle(population_stats(truth), 0.0);
}

RecoveryError recovery_error(const ModelParams& truth, const ModelParams& estimate) {
  if (truth.lambda.rows() != estimate.lambda.rows() ||
      truth.lambda.cols() != estimate.lambda.cols() ||
      truth.theta.rows() != estimate.theta.rows() || truth.theta.cols() != estimate.theta.cols()) {
    throw DimensionMismatch("recovery_error: truth and estimate shapes differ");
  }
  auto relative = [](const Matrix& t, const Matrix& e) {
    const double denom = t.norm();
    const double err = (e - t).norm();
    return denom > 0.0 ? err / denom : err;
  };

  RecoveryError out;
  out.rel_frobenius_lambda = relative(truth.lambda, estimate.lambda);
  out.rel_frobenius_theta = relative(truth.theta, estimate.theta);

  Index tp = 0, fp = 0, fn = 0;
  for (Index j = 0; j < truth.theta.cols(); ++j) {
    for (Index i = 0; i < truth.theta.rows(); ++i) {
      const bool actual = std::abs(truth.theta(i, j)) > kSupportThreshold;
      const bool predicted = std::abs(estimate.theta(i, j)) > kSupportThreshold;
      tp += actual && predicted;
      fp += !actual && predicted;
      fn += actual && !predicted;
    }
  }
  const Index denom = 2 * tp + fp + fn;
  out.support_f1_theta = denom == 0 ? 1.0 : 2.0 * static_cast<double>(tp) / denom;
  return out;
}

}  // namespace gcrf
