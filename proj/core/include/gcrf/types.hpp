#pragma once

#include <Eigen/Dense>

namespace gcrf {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Parameters of the conditional model
///   p(y | x) ∝ exp(-yᵀ Λ y - 2 xᵀ Θ y),
/// with x ∈ ℝⁿ and y ∈ ℝᵖ. `lambda` couples the outputs, `theta` maps inputs
/// to outputs.
struct ModelParams {
  Matrix lambda;  // p×p, symmetric positive definite
  Matrix theta;   // n×p

  Index n() const noexcept { return theta.rows(); }
  Index p() const noexcept { return lambda.rows(); }

  /// Λ = I, Θ = 0. The default starting point of both solvers.
  static ModelParams initial(Index n, Index p);

  /// Throws DimensionMismatch, InvalidArgument (asymmetric Λ) or
  /// NotPositiveDefinite.
  void validate() const;
};

/// Empirical second moments of a dataset, without mean-centering:
///   s_yy = YᵀY/m, s_yx = YᵀX/m, s_xx = XᵀX/m.
struct SufficientStats {
  Matrix s_yy;  // p×p
  Matrix s_yx;  // p×n
  Matrix s_xx;  // n×n
  Index m = 0;

  Index n() const noexcept { return s_xx.rows(); }
  Index p() const noexcept { return s_yy.rows(); }

  void validate() const;
};

/// Raw samples; row i of `x` and row i of `y` form one observation.
struct Dataset {
  Matrix x;  // m×n
  Matrix y;  // m×p

  Index samples() const noexcept { return x.rows(); }

  void validate() const;
};

}  // namespace gcrf
