#include "gcrf/solver.hpp"

#include <cmath>

#include "gcrf/errors.hpp"

namespace gcrf {

void SolverConfig::validate() const {
  if (max_iter < 0) throw InvalidArgument("max_iter must be nonnegative");
  if (!(grad_tol > 0.0)) throw InvalidArgument("grad_tol must be positive");
  if (!(armijo_c > 0.0 && armijo_c < 1.0)) throw InvalidArgument("armijo_c must lie in (0, 1)");
  if (!(backtrack_factor > 0.0 && backtrack_factor < 1.0)) {
    throw InvalidArgument("backtrack_factor must lie in (0, 1)");
  }
  if (!(initial_step > 0.0) || !std::isfinite(initial_step)) {
    throw InvalidArgument("initial_step must be positive");
  }
  if (!(l1_weight >= 0.0) || !std::isfinite(l1_weight)) {
    throw InvalidArgument("l1_weight must be nonnegative");
  }
  if (!(mu0 > 0.0)) throw InvalidArgument("mu0 must be positive");
  if (!(beta > 0.0)) throw InvalidArgument("beta must be positive");
  if (!(mu_max >= mu0)) throw InvalidArgument("mu_max must be at least mu0");
  if (!(primal_tol > 0.0)) throw InvalidArgument("primal_tol must be positive");
  if (!(dual_tol > 0.0)) throw InvalidArgument("dual_tol must be positive");
}

double l1_penalty(const ModelParams& params, double weight) {
  if (weight == 0.0) return 0.0;
  const double off_diagonal =
      params.lambda.cwiseAbs().sum() - params.lambda.diagonal().cwiseAbs().sum();
  return weight * (params.theta.cwiseAbs().sum() + off_diagonal);
}

Matrix soft_threshold(const Matrix& a, double t, bool skip_diagonal) {
  if (!(t >= 0.0)) throw InvalidArgument("soft_threshold: t must be nonnegative");
  Matrix out = a.unaryExpr([t](double v) {
    const double shrunk = std::abs(v) - t;
    return shrunk > 0.0 ? std::copysign(shrunk, v) : 0.0;
  });
  if (skip_diagonal) {
    const Index k = std::min(a.rows(), a.cols());
    out.diagonal().head(k) = a.diagonal().head(k);
  }
  return out;
}

double params_distance(const ModelParams& a, const ModelParams& b) {
  if (a.lambda.rows() != b.lambda.rows() || a.lambda.cols() != b.lambda.cols() ||
      a.theta.rows() != b.theta.rows() || a.theta.cols() != b.theta.cols()) {
    throw DimensionMismatch("params_distance: shapes differ");
  }
  return std::sqrt((a.lambda - b.lambda).squaredNorm() + (a.theta - b.theta).squaredNorm());
}

}  // namespace gcrf
