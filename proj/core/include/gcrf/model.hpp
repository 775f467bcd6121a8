#pragma once

#include "gcrf/linalg.hpp"
#include "gcrf/types.hpp"

namespace gcrf {

/// Gradients of the negative log-likelihood with respect to Λ and Θ.
struct Gradients {
  Matrix lambda;  // p×p, exactly symmetric
  Matrix theta;   // n×p

  double squared_norm() const { return lambda.squaredNorm() + theta.squaredNorm(); }
  double norm() const;
};

SufficientStats compute_stats(const Dataset& data);

/// Subtracts column means from X and Y. Opt-in preprocessing; the statistics
/// themselves are never centered.
Dataset center_columns(const Dataset& data);

/// f(Λ, Θ) = -log|Λ| + tr(S_yy Λ + 2 S_yx Θ + Λ⁻¹ Θᵀ S_xx Θ)
///
/// Throws NotPositiveDefinite for infeasible Λ, DimensionMismatch when params
/// and stats disagree on (n, p).
double objective(const SufficientStats& stats, const ModelParams& params);

/// Same value, reusing a factorization of params.lambda.
double objective(const SufficientStats& stats, const ModelParams& params,
                 const SpdFactor& lambda_factor);

/// ∂f/∂Λ = -Λ⁻¹ + S_yy - Λ⁻¹ Θᵀ S_xx Θ Λ⁻¹
/// ∂f/∂Θ = 2 S_yxᵀ + 2 S_xx Θ Λ⁻¹
Gradients gradients(const SufficientStats& stats, const ModelParams& params);

/// Conditional mean ŷ = -Λ⁻¹ Θᵀ x.
Vector predict(const ModelParams& params, const Vector& x);

/// Row-wise prediction for an m×n input matrix; returns m×p.
Matrix predict(const ModelParams& params, const Matrix& x_rows);

/// Ridge used by the closed-form oracle when none is given: 1e-8·tr(S_xx)/n
/// if S_xx is numerically singular, zero otherwise.
double default_ridge(const SufficientStats& stats);

/// Stationary point of f, used as the reference optimum:
///   Λ* = (S_yy - S_yx (S_xx + rI)⁻¹ S_yxᵀ)⁻¹
///   Θ* = -(S_xx + rI)⁻¹ S_yxᵀ Λ*
/// Throws DegenerateData if S_xx + rI or the Schur complement is not
/// positive definite.
ModelParams closed_form_mle(const SufficientStats& stats, double ridge);
ModelParams closed_form_mle(const SufficientStats& stats);

}  // namespace gcrf
