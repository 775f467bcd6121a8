#include "gcrf/gd.hpp"

#include <cmath>

#include "gcrf/errors.hpp"
#include "step.hpp"

namespace gcrf {

namespace {

/// f (+ L1 penalty), or nullopt when Λ is not positive definite.
std::optional<double> merit(const SufficientStats& stats, const ModelParams& params,
                            double l1_weight) {
  const auto factor = SpdFactor::try_compute(params.lambda);
  if (!factor) return std::nullopt;
  return objective(stats, params, *factor) + l1_penalty(params, l1_weight);
}

}  // namespace

double line_search(const SufficientStats& stats, const ModelParams& params,
                   const Gradients& grads, double f_current, const SolverConfig& config) {
  SolverConfig plain = config;
  plain.l1_weight = 0.0;
  const auto step = detail::backtrack(params, grads, f_current, plain,
                                      [&](const ModelParams& c) { return merit(stats, c, 0.0); },
                                      [&](const ModelParams& c) { return gradients(stats, c); });
  if (!step) throw LineSearchStalled("no admissible step after backtracking");
  return step->step;
}

FitResult fit_gd(const SufficientStats& stats, const SolverConfig& config,
                 const std::optional<ModelParams>& init) {
  stats.validate();
  config.validate();
  ModelParams params = init ? *init : ModelParams::initial(stats.n(), stats.p());
  params.validate();

  const detail::Stopwatch clock;
  const auto current_merit = merit(stats, params, config.l1_weight);
  if (!current_merit || !std::isfinite(*current_merit)) {
    throw DegenerateData("objective is not finite at the initial point");
  }
  double f = *current_merit;
  Gradients grads = gradients(stats, params);
  double grad_norm = detail::stationarity_norm(params, grads, config.l1_weight);

  FitResult result;
  result.trace.push_back({0, f, grad_norm, std::nullopt, std::nullopt, std::nullopt,
                          clock.elapsed_ms()});
  auto converged = [&] { return grad_norm <= config.grad_tol * (1.0 + std::abs(f)); };

  for (int iter = 1; iter <= config.max_iter && !converged(); ++iter) {
    auto step = detail::backtrack(params, grads, f, config, [&](const ModelParams& c) {
      return merit(stats, c, config.l1_weight);
    }, [&](const ModelParams& c) { return gradients(stats, c); });
    if (!step) break;
    params = std::move(step->params);
    f = step->merit;
    grads = gradients(stats, params);
    grad_norm = detail::stationarity_norm(params, grads, config.l1_weight);
    result.trace.push_back({iter, f, grad_norm, std::nullopt, std::nullopt, std::nullopt,
                            clock.elapsed_ms()});
  }

  result.converged = converged();
  result.iterations = static_cast<int>(result.trace.size()) - 1;
  result.params = std::move(params);
  return result;
}

}  // namespace gcrf
