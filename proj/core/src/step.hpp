#pragma once

// Backtracking machinery shared by the gradient-descent and ADMM solvers.

#include <chrono>
#include <cmath>
#include <optional>

#include "gcrf/linalg.hpp"
#include "gcrf/model.hpp"
#include "gcrf/solver.hpp"

namespace gcrf::detail {

struct Step {
  ModelParams params;
  double merit = 0.0;
  double step = 0.0;
};

/// x - η∇, followed by the L1 proximal map when the weight is positive.
inline ModelParams gradient_step(const ModelParams& x, const Gradients& g, double eta,
                                 double l1_weight) {
  ModelParams out{x.lambda - eta * g.lambda, x.theta - eta * g.theta};
  if (l1_weight > 0.0) {
    out.theta = soft_threshold(out.theta, eta * l1_weight, false);
    out.lambda = soft_threshold(out.lambda, eta * l1_weight, true);
  }
  return out;
}

/// Norm of the proximal-gradient mapping x - prox(x - ∇); equals ‖∇‖ when the
/// L1 weight is zero.
inline double stationarity_norm(const ModelParams& x, const Gradients& g, double l1_weight) {
  if (l1_weight == 0.0) return g.norm();
  const ModelParams moved = gradient_step(x, g, 1.0, l1_weight);
  return params_distance(x, moved);
}

/// Merit changes below this fraction of 1 + |merit0| are treated as rounding
/// noise by the sufficient-decrease test.
inline constexpr double kMeritNoiseBand = 1e-10;

/// Tries η = initial_step·backtrack_factorᵏ for k = 0..kMaxBacktracks and
/// returns the first candidate with a finite merit satisfying sufficient
/// decrease. `merit` returns nullopt for infeasible points; `gradient_at`
/// returns the smooth gradient at a candidate.
///
/// Without L1 the decrease test is merit0 - c·η·‖g‖²; with L1 it is the
/// proximal form merit0 - (c/η)‖x⁺ - x‖², which coincides with the former
/// for a plain gradient step.
///
/// Near a minimizer the true decrease can fall below the rounding error of
/// the merit itself. When the computed change is inside the noise band and
/// L1 is off, the decrease is instead estimated by the trapezoid rule on the
/// directional derivatives, (η/2)(⟨g, d⟩ + ⟨g⁺, d⟩) with d = -g (the
/// approximate Armijo condition of Hager and Zhang). A candidate equal to x
/// is only accepted at an exact stationary point.
template <class Merit, class GradientAt>
std::optional<Step> backtrack(const ModelParams& x, const Gradients& g, double merit0,
                              const SolverConfig& config, Merit&& merit,
                              GradientAt&& gradient_at) {
  const double g2 = g.squared_norm();
  const double band = kMeritNoiseBand * (1.0 + std::abs(merit0));
  double eta = config.initial_step;
  for (int k = 0; k <= kMaxBacktracks; ++k, eta *= config.backtrack_factor) {
    ModelParams candidate = gradient_step(x, g, eta, config.l1_weight);
    if (g2 > 0.0 && candidate.lambda == x.lambda && candidate.theta == x.theta) break;
    const std::optional<double> value = merit(candidate);
    if (!value || !std::isfinite(*value)) continue;
    if (config.l1_weight > 0.0) {
      const double moved = params_distance(candidate, x);
      if (*value <= merit0 - config.armijo_c / eta * moved * moved) {
        return Step{std::move(candidate), *value, eta};
      }
      continue;
    }
    if (*value <= merit0 - config.armijo_c * eta * g2) {
      return Step{std::move(candidate), *value, eta};
    }
    if (std::abs(*value - merit0) <= band) {
      const Gradients next = gradient_at(candidate);
      const double slope_end = -(trace_of_product(next.lambda, g.lambda) +
                                 (next.theta.array() * g.theta.array()).sum());
      const double estimated = 0.5 * eta * (-g2 + slope_end);
      if (estimated <= -config.armijo_c * eta * g2) {
        return Step{std::move(candidate), *value, eta};
      }
    }
  }
  return std::nullopt;
}

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace gcrf::detail
