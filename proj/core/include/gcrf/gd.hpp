#pragma once

#include <optional>

#include "gcrf/model.hpp"
#include "gcrf/solver.hpp"

namespace gcrf {

/// Largest η = initial_step·backtrack_factorᵏ (k ≤ kMaxBacktracks) for which
/// the stepped Λ is positive definite and
///   f(stepped) ≤ f_current - armijo_c·η·(‖∇_Λ‖² + ‖∇_Θ‖²).
/// Throws LineSearchStalled if no such η exists.
double line_search(const SufficientStats& stats, const ModelParams& params,
                   const Gradients& grads, double f_current, const SolverConfig& config);

/// Steepest descent on f with Armijo backtracking and positive-definiteness
/// safeguarding. Starts from Λ = I, Θ = 0 unless `init` is given.
///
/// A stalled line search ends the run with converged = false; the trace up
/// to that point is kept.
FitResult fit_gd(const SufficientStats& stats, const SolverConfig& config,
                 const std::optional<ModelParams>& init = std::nullopt);

}  // namespace gcrf
