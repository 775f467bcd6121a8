#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gcrf/types.hpp"

namespace gcrf {

/// Backtracking stops after this many reductions of the step.
inline constexpr int kMaxBacktracks = 60;

/// Controls shared by the gradient-descent and ADMM solvers.
struct SolverConfig {
  int max_iter = 10000;
  /// Gradient descent stops when ‖∇f‖_F ≤ grad_tol·(1 + |f|). ADMM applies
  /// the same test to ∇L and also bounds the relative objective change.
  double grad_tol = 1e-7;
  double armijo_c = 1e-4;
  double backtrack_factor = 0.5;
  double initial_step = 1.0;
  /// Elementwise L1 weight on Θ and off-diagonal Λ. Zero disables the
  /// proximal step entirely.
  double l1_weight = 0.0;

  double mu0 = 1e-2;
  double beta = 1.1;
  double mu_max = 20.0;
  double primal_tol = 1e-6;
  double dual_tol = 1e-6;

  /// Both solvers are deterministic; the seed is carried for callers that
  /// randomize data or initialization around a fit.
  std::uint64_t seed = 0;

  static SolverConfig gd_defaults() { return {}; }
  static SolverConfig admm_defaults() {
    SolverConfig config;
    config.max_iter = 5000;
    return config;
  }

  /// Throws InvalidArgument for out-of-range fields.
  void validate() const;
};

/// One row of a convergence trace. Columns that do not apply to a solver
/// are left empty.
struct TraceRecord {
  int iter = 0;
  double objective = 0.0;
  std::optional<double> grad_norm;
  std::optional<double> primal_residual;
  std::optional<double> dual_residual;
  std::optional<double> mu;
  double elapsed_ms = 0.0;
};

struct FitResult {
  ModelParams params;
  std::vector<TraceRecord> trace;
  bool converged = false;
  int iterations = 0;  // trace.size() - 1
};

/// w·(‖Θ‖₁ + Σ_{i≠j} |Λ_ij|)
double l1_penalty(const ModelParams& params, double weight);

/// sign(a)·max(|a| - t, 0) elementwise; the diagonal passes through
/// unchanged when `skip_diagonal` is set.
Matrix soft_threshold(const Matrix& a, double t, bool skip_diagonal);

/// √(‖ΔΛ‖²_F + ‖ΔΘ‖²_F)
double params_distance(const ModelParams& a, const ModelParams& b);

}  // namespace gcrf
