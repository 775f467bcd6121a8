#include "gcrf/evalkit.hpp"

#include <cmath>
#include <limits>
#include <random>

#include <gtest/gtest.h>

#include "gcrf/errors.hpp"
#include "gcrf/model.hpp"
#include "test_support.hpp"

namespace gcrf {
namespace {

double brute_force_auc(const std::vector<double>& s, const std::vector<int>& y) {
  double wins = 0.0;
  double pairs = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (y[i] != 1) continue;
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (y[j] != 0) continue;
      pairs += 1.0;
      if (s[i] > s[j]) wins += 1.0;
      else if (s[i] == s[j]) wins += 0.5;
    }
  }
  return wins / pairs;
}

TEST(RocAuc, Examples) {
  EXPECT_EQ(roc_auc(std::vector{0.1, 0.4, 0.35, 0.8}, std::vector{0, 0, 1, 1}), 0.75);
  EXPECT_EQ(roc_auc(std::vector{0.9, 0.8, 0.2, 0.1}, std::vector{1, 1, 0, 0}), 1.0);
  EXPECT_EQ(roc_auc(std::vector{0.1, 0.2, 0.8, 0.9}, std::vector{1, 1, 0, 0}), 0.0);
  EXPECT_EQ(roc_auc(std::vector{0.5, 0.5, 0.5, 0.5}, std::vector{1, 0, 1, 0}), 0.5);
}

TEST(RocAuc, Errors) {
  EXPECT_THROW(roc_auc(std::vector{0.1, 0.2}, std::vector{1, 1}), InvalidArgument);
  EXPECT_THROW(roc_auc(std::vector{0.1, 0.2}, std::vector{0, 0}), InvalidArgument);
  EXPECT_THROW(roc_auc(std::vector{0.1, 0.2}, std::vector{0}), DimensionMismatch);
  EXPECT_THROW(roc_auc(std::vector{0.1, 0.2}, std::vector{0, 2}), InvalidArgument);
  EXPECT_THROW(roc_auc(std::vector{0.1, std::numeric_limits<double>::quiet_NaN()},
                       std::vector{0, 1}),
               InvalidArgument);
}

TEST(RocAuc, MatchesBruteForce) {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> size(2, 60);
  std::uniform_int_distribution<int> coarse(0, 5);  // forces ties
  std::bernoulli_distribution coin(0.4);
  for (int trial = 0; trial < 100; ++trial) {
    const int k = size(rng);
    std::vector<double> s(k);
    std::vector<int> y(k);
    for (int i = 0; i < k; ++i) {
      s[i] = 0.25 * coarse(rng);
      y[i] = coin(rng) ? 1 : 0;
    }
    y[0] = 1;
    y[1] = 0;
    EXPECT_EQ(roc_auc(s, y), brute_force_auc(s, y)) << "trial " << trial;
  }
}

TEST(RocAuc, InvariantToMonotoneTransform) {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> g;
  std::vector<double> s(200), t(200);
  std::vector<int> y(200);
  for (int i = 0; i < 200; ++i) {
    y[i] = i % 3 == 0;
    s[i] = g(rng) + y[i];
    t[i] = std::exp(3.0 * s[i]) + 7.0;
  }
  EXPECT_EQ(roc_auc(s, y), roc_auc(t, y));
}

TEST(RocAuc, ComplementIdentity) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> coarse(0, 9);
  std::vector<double> s(80);
  std::vector<int> y(80), flipped(80);
  for (int i = 0; i < 80; ++i) {
    s[i] = coarse(rng);
    y[i] = i % 2;
    flipped[i] = 1 - y[i];
  }
  EXPECT_NEAR(roc_auc(s, y) + roc_auc(s, flipped), 1.0, 1e-15);
}

std::vector<TraceRecord> trace_of(std::initializer_list<double> objectives) {
  std::vector<TraceRecord> t;
  int k = 0;
  for (double f : objectives) {
    TraceRecord r;
    r.iter = k++;
    r.objective = f;
    t.push_back(r);
  }
  return t;
}

TEST(IterationsToTolerance, Examples) {
  const auto t = trace_of({5.0, 3.0, 1.5, 1.0000005, 1.0});
  EXPECT_EQ(iterations_to_tolerance(t, 1.0, 1e-6), 3);
  EXPECT_EQ(iterations_to_tolerance(t, 1.0, 1e-9), 4);
  EXPECT_THROW(iterations_to_tolerance(t, 1.0, 0.0), InvalidArgument);
  EXPECT_EQ(iterations_to_tolerance(t, 10.0, 1e-6), 0);
  EXPECT_EQ(iterations_to_tolerance(t, 0.0, 1e-6), std::nullopt);
  EXPECT_EQ(iterations_to_tolerance({}, 0.0, 1e-6), std::nullopt);
}

TEST(IterationsToTolerance, MonotoneInEpsilon) {
  const auto t = trace_of({9.0, 4.0, 2.0, 1.1, 1.01, 1.001, 1.0001});
  std::optional<int> previous = 0;
  for (double eps : {10.0, 1.0, 0.1, 0.01, 1e-3, 1e-4, 1e-5}) {
    const auto k = iterations_to_tolerance(t, 1.0, eps);
    if (!k) {
      previous = std::nullopt;
      continue;
    }
    ASSERT_TRUE(previous.has_value());
    EXPECT_GE(*k, *previous);
    previous = k;
  }
}

TEST(CompareSolvers, ScalarInstance) {
  const SufficientStats s = testing::scalar_stats(2.0, 3.0, 1.0);
  const SolverComparison cmp = compare_solvers(s, SolverConfig{});
  EXPECT_NEAR(cmp.f_star, objective(s, closed_form_mle(s, 0.0)), 1e-15);
  ASSERT_TRUE(cmp.gd_iters.has_value());
  ASSERT_TRUE(cmp.admm_iters.has_value());
  EXPECT_TRUE(cmp.agree);
  EXPECT_TRUE(cmp.gd.converged);
  EXPECT_TRUE(cmp.admm.converged);
}

TEST(CompareSolvers, ZeroIterationsNeverReachTolerance) {
  std::mt19937_64 rng(5);
  const SufficientStats s = testing::random_stats(rng, 3, 2);
  SolverConfig config;
  config.max_iter = 0;
  const SolverComparison cmp = compare_solvers(s, config);
  EXPECT_FALSE(cmp.gd_iters.has_value());
  EXPECT_FALSE(cmp.admm_iters.has_value());
  // Both stay at the initial point.
  EXPECT_TRUE(cmp.agree);
  EXPECT_EQ(cmp.gd.iterations, 0);
  EXPECT_EQ(cmp.admm.iterations, 0);
}

TEST(CompareSolvers, IgnoresL1Setting) {
  std::mt19937_64 rng(5);
  const SufficientStats s = testing::random_stats(rng, 3, 2);
  SolverConfig config;
  config.l1_weight = 0.5;
  EXPECT_TRUE(compare_solvers(s, config).agree);
}

TEST(StandardSuite, Shape) {
  const auto suite = standard_suite();
  ASSERT_EQ(suite.size(), 5u);
  for (std::size_t i = 0; i < suite.size(); ++i) {
    EXPECT_EQ(suite[i].seed, i + 1);
    EXPECT_EQ(suite[i].n, 5);
    EXPECT_EQ(suite[i].p, 3);
    EXPECT_EQ(suite[i].m, 1000);
  }
  const Dataset a = suite_dataset(suite[0]);
  EXPECT_EQ(a.x.rows(), 1000);
  EXPECT_EQ(a.x, suite_dataset(suite[0]).x);
  EXPECT_NE(a.x, suite_dataset(suite[1]).x);
  EXPECT_THROW(standard_suite(-1), InvalidArgument);
}

TEST(StandardSuite, AdmmNoSlowerOnMajority) {
  int admm_not_worse = 0;
  const auto suite = standard_suite();
  for (const auto& c : suite) {
    const SolverComparison cmp = compare_solvers(compute_stats(suite_dataset(c)), SolverConfig{});
    ASSERT_TRUE(cmp.gd_iters && cmp.admm_iters) << "seed " << c.seed;
    EXPECT_TRUE(cmp.agree) << "seed " << c.seed;
    admm_not_worse += *cmp.admm_iters <= *cmp.gd_iters;
  }
  EXPECT_GE(admm_not_worse, 3);
}

}  // namespace
}  // namespace gcrf
