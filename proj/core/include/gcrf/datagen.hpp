#pragma once

#include <cstdint>

#include "gcrf/types.hpp"

namespace gcrf {

struct GroundTruth {
  ModelParams params;
  Matrix sigma_x;  // n×n input covariance
  std::uint64_t seed = 0;
};

/// Λ = A + (diag_dominance + r)·I with A symmetric, entries U[-1, 1], and r
/// the smallest shift giving λ_min(Λ) ≥ 0.1 + diag_dominance. Each Θ entry is
/// nonzero with probability `theta_density`, drawn from U[-1, 1].
/// sigma_x = I.
GroundTruth sample_ground_truth(Index n, Index p, double diag_dominance, double theta_density,
                                std::uint64_t seed);

/// x ~ N(0, Σ_x), y | x ~ N(-Λ⁻¹ Θᵀ x, (2Λ)⁻¹).
Dataset sample_dataset(const GroundTruth& truth, Index m, std::uint64_t seed);

/// Expected value of the sufficient statistics under the generator (m = 1
/// is a placeholder; the objective does not depend on m).
SufficientStats population_stats(const GroundTruth& truth);

/// The minimizer of the objective under population statistics, i.e. what a
/// fit converges to as m → ∞. Because the generator's noise covariance is
/// (2Λ)⁻¹ while the objective's -log|Λ| term matches a Λ⁻¹ covariance, this
/// is (2Λ, 2Θ) rather than (Λ, Θ); both give the same conditional mean.
ModelParams objective_target(const GroundTruth& truth);

struct RecoveryError {
  double rel_frobenius_lambda = 0.0;
  double rel_frobenius_theta = 0.0;
  double support_f1_theta = 1.0;
};

inline constexpr double kSupportThreshold = 1e-3;

/// ‖est - true‖_F / ‖true‖_F per parameter (absolute error when ‖true‖ = 0)
/// and F1 of the Θ support at |entry| > 1e-3. F1 is 1 when both supports
/// are empty.
RecoveryError recovery_error(const ModelParams& truth, const ModelParams& estimate);

}  // namespace gcrf
