#include "gcrf/evalkit.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gcrf/admm.hpp"
#include "gcrf/datagen.hpp"
#include "gcrf/errors.hpp"
#include "gcrf/gd.hpp"
#include "gcrf/model.hpp"

namespace gcrf {

double roc_auc(std::span<const double> scores, std::span<const int> labels) {
  if (scores.size() != labels.size()) throw DimensionMismatch("scores and labels differ in length");
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (labels[i] != 0 && labels[i] != 1) throw InvalidArgument("labels must be 0 or 1");
    if (std::isnan(scores[i])) throw InvalidArgument("scores must not be NaN");
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  // Counted in half-pairs so that ties stay integral: each (pos, neg) pair
  // with pos > neg contributes 2, each tie contributes 1.
  std::uint64_t half_pairs = 0;
  std::uint64_t negatives_below = 0;
  std::uint64_t positives = 0;
  std::uint64_t negatives = 0;
  for (std::size_t start = 0; start < order.size();) {
    std::size_t end = start;
    std::uint64_t group_pos = 0;
    std::uint64_t group_neg = 0;
    while (end < order.size() && scores[order[end]] == scores[order[start]]) {
      (labels[order[end]] == 1 ? group_pos : group_neg) += 1;
      ++end;
    }
    half_pairs += group_pos * (2 * negatives_below + group_neg);
    negatives_below += group_neg;
    positives += group_pos;
    negatives += group_neg;
    start = end;
  }
  if (positives == 0 || negatives == 0) {
    throw InvalidArgument("AUC is undefined without both positive and negative labels");
  }
  return static_cast<double>(half_pairs) / (2.0 * static_cast<double>(positives * negatives));
}

std::optional<int> iterations_to_tolerance(std::span<const TraceRecord> trace, double f_star,
                                           double eps) {
  if (!(eps > 0.0)) throw InvalidArgument("eps must be positive");
  for (const auto& record : trace) {
    if (record.objective <= f_star + eps) return record.iter;
  }
  return std::nullopt;
}

SolverComparison compare_solvers(const SufficientStats& stats, const SolverConfig& config) {
  SolverConfig plain = config;
  plain.l1_weight = 0.0;
  SolverComparison out;
  out.f_star = objective(stats, closed_form_mle(stats, 0.0));
  const ModelParams init = ModelParams::initial(stats.n(), stats.p());
  out.gd = fit_gd(stats, plain, init);
  out.admm = fit_admm(stats, plain, init);
  out.gd_iters = iterations_to_tolerance(out.gd.trace, out.f_star, kComparisonEps);
  out.admm_iters = iterations_to_tolerance(out.admm.trace, out.f_star, kComparisonEps);
  out.agree = params_distance(out.gd.params, out.admm.params) <= kAgreementTolerance;
  return out;
}

std::vector<SuiteCase> standard_suite(int seeds, std::uint64_t first_seed, Index n, Index p,
                                      Index m) {
  if (seeds < 0) throw InvalidArgument("seed count must be nonnegative");
  std::vector<SuiteCase> cases;
  for (int i = 0; i < seeds; ++i) cases.push_back({first_seed + static_cast<std::uint64_t>(i), n, p, m});
  return cases;
}

Dataset suite_dataset(const SuiteCase& c) {
  const GroundTruth truth = sample_ground_truth(c.n, c.p, 1.0, 0.5, c.seed);
  return sample_dataset(truth, c.m, c.seed ^ 0x9E3779B97F4A7C15ULL);
}

}  // namespace gcrf
