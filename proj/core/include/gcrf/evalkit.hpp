#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "gcrf/solver.hpp"
#include "gcrf/types.hpp"

namespace gcrf {

/// Area under the ROC curve as the Mann–Whitney statistic; tied (pos, neg)
/// pairs count one half. Throws InvalidArgument when only one class is
/// present, DimensionMismatch for length mismatch.
double roc_auc(std::span<const double> scores, std::span<const int> labels);

/// First trace iteration whose objective is ≤ f_star + eps.
std::optional<int> iterations_to_tolerance(std::span<const TraceRecord> trace, double f_star,
                                           double eps);

inline constexpr double kComparisonEps = 1e-6;
inline constexpr double kAgreementTolerance = 1e-4;

struct SolverComparison {
  std::optional<int> gd_iters;
  std::optional<int> admm_iters;
  double f_star = 0.0;
  bool agree = false;
  FitResult gd;
  FitResult admm;
};

/// Fits both solvers from Λ = I, Θ = 0 with the same config (L1 disabled),
/// counts iterations to f* + 1e-6 with f* from the closed-form optimum, and
/// checks the final parameters agree within 1e-4 (Frobenius).
SolverComparison compare_solvers(const SufficientStats& stats, const SolverConfig& config);

/// One cell of the benchmark suite.
struct SuiteCase {
  std::uint64_t seed = 1;
  Index n = 5;
  Index p = 3;
  Index m = 1000;
};

/// Seeds first_seed, first_seed+1, … at fixed (n, p, m). The default is the
/// standard five-seed suite.
std::vector<SuiteCase> standard_suite(int seeds = 5, std::uint64_t first_seed = 1, Index n = 5,
                                      Index p = 3, Index m = 1000);

/// Ground truth with diag_dominance 1 and theta_density 0.5, sampled
/// deterministically from the case seed.
Dataset suite_dataset(const SuiteCase& c);

}  // namespace gcrf
