#pragma once

#include <optional>

#include "gcrf/model.hpp"
#include "gcrf/solver.hpp"

namespace gcrf {

// ADMM on the split problem
//
//   min  -log|Λ| + tr(S_yy Λ + 2 S_yx Θ + S_xx Φ)   s.t.  Φ = Θ Λ⁻¹ Θᵀ
//
// Φ and the multiplier Q are n×n symmetric. The constraint is written with
// Θ Λ⁻¹ Θᵀ (n×n) so that tr(S_xx Φ) reproduces the coupled trace term of f.

struct AdmmState {
  ModelParams params;
  Matrix phi;   // n×n
  Matrix dual;  // n×n, the multiplier Q
  double mu = 0.0;
  int iteration = 0;

  /// Φ = Θ Λ⁻¹ Θᵀ (feasible), Q = 0, μ = mu0.
  static AdmmState initial(const ModelParams& params, double mu0);
};

/// R = Φ - Θ Λ⁻¹ Θᵀ
Matrix residual(const ModelParams& params, const Matrix& phi);

/// L = -log|Λ| + tr(S_yy Λ + 2 S_yx Θ + S_xx Φ) + ⟨Q, R⟩ + (μ/2)‖R‖²_F
double lagrangian(const SufficientStats& stats, const AdmmState& state);

/// With G = Q + μR:
///   ∂L/∂Λ = -Λ⁻¹ + S_yy + Λ⁻¹ Θᵀ G Θ Λ⁻¹
///   ∂L/∂Θ = 2 S_yxᵀ - 2 G Θ Λ⁻¹
Gradients lagrangian_gradients(const SufficientStats& stats, const AdmmState& state);

/// Exact minimizer of L over Φ: Θ Λ⁻¹ Θᵀ - (S_xx + Q)/μ.
Matrix phi_step(const SufficientStats& stats, const AdmmState& state);

/// One Armijo-backtracked, PD-safeguarded joint gradient step on (Λ, Θ)
/// with L as the merit function (plus the L1 penalty when enabled).
/// Throws LineSearchStalled.
ModelParams lambda_theta_step(const SufficientStats& stats, const AdmmState& state,
                              const SolverConfig& config);

/// Q + μ·R(params, Φ), symmetrized.
Matrix dual_update(const AdmmState& state);

/// min(mu_max, beta·mu)
double penalty_update(double mu, const SolverConfig& config);

/// Runs [Λ,Θ step → Φ step → dual update → penalty update] until the primal
/// residual, the dual residual μ‖Φ⁺ - Φ‖_F, the relative objective change
/// and the (Λ, Θ) gradient norm of L are all below tolerance, or max_iter is
/// reached. The traced objective is
/// f(Λ, Θ) at the current parameters and the traced μ is the penalty after
/// the update, so record k carries min(mu_max, mu0·betaᵏ).
FitResult fit_admm(const SufficientStats& stats, const SolverConfig& config,
                   const std::optional<ModelParams>& init = std::nullopt);

}  // namespace gcrf
