#include "gcrf/admm.hpp"

#include <cmath>

#include "gcrf/errors.hpp"
#include "step.hpp"

namespace gcrf {

namespace {

/// Θ Λ⁻¹ Θᵀ, symmetrized.
Matrix coupling(const ModelParams& params, const SpdFactor& factor) {
  return symmetrize(params.theta * factor.solve(Matrix(params.theta.transpose())));
}

void check_state(const SufficientStats& stats, const AdmmState& state) {
  const Index n = stats.n();
  if (state.params.n() != n || state.params.p() != stats.p() || state.phi.rows() != n ||
      state.phi.cols() != n || state.dual.rows() != n || state.dual.cols() != n) {
    throw DimensionMismatch("ADMM state does not match the statistics");
  }
}

double lagrangian(const SufficientStats& stats, const AdmmState& state, const SpdFactor& factor) {
  const ModelParams& params = state.params;
  const Matrix r = state.phi - coupling(params, factor);
  return -factor.log_det() + trace_of_product(stats.s_yy, params.lambda) +
         2.0 * trace_of_product(stats.s_yx, params.theta) +
         trace_of_product(stats.s_xx, state.phi) + trace_of_product(state.dual, r) +
         0.5 * state.mu * r.squaredNorm();
}

}  // namespace

AdmmState AdmmState::initial(const ModelParams& params, double mu0) {
  params.validate();
  AdmmState state;
  state.params = params;
  state.phi = coupling(params, SpdFactor(params.lambda));
  state.dual = Matrix::Zero(params.n(), params.n());
  state.mu = mu0;
  return state;
}

Matrix residual(const ModelParams& params, const Matrix& phi) {
  if (phi.rows() != params.n() || phi.cols() != params.n()) {
    throw DimensionMismatch("Φ must be n×n");
  }
  return symmetrize(phi - coupling(params, SpdFactor(params.lambda)));
}

double lagrangian(const SufficientStats& stats, const AdmmState& state) {
  check_state(stats, state);
  return lagrangian(stats, state, SpdFactor(state.params.lambda));
}

Gradients lagrangian_gradients(const SufficientStats& stats, const AdmmState& state) {
  check_state(stats, state);
  const ModelParams& params = state.params;
  const SpdFactor factor(params.lambda);
  const Matrix k = factor.solve(Matrix(params.theta.transpose())).transpose();  // Θ Λ⁻¹
  const Matrix r = state.phi - symmetrize(params.theta * k.transpose());
  const Matrix g = state.dual + state.mu * r;
  Gradients out;
  out.lambda = symmetrize(-factor.inverse() + stats.s_yy + k.transpose() * g * k);
  out.theta = 2.0 * stats.s_yx.transpose() - 2.0 * g * k;
  return out;
}

Matrix phi_step(const SufficientStats& stats, const AdmmState& state) {
  check_state(stats, state);
  if (!(state.mu > 0.0)) throw InvalidArgument("phi_step: mu must be positive");
  const SpdFactor factor(state.params.lambda);
  return symmetrize(coupling(state.params, factor) - (stats.s_xx + state.dual) / state.mu);
}

ModelParams lambda_theta_step(const SufficientStats& stats, const AdmmState& state,
                              const SolverConfig& config) {
  const double merit0 = lagrangian(stats, state) + l1_penalty(state.params, config.l1_weight);
  const Gradients grads = lagrangian_gradients(stats, state);
  AdmmState trial = state;
  const auto step =
      detail::backtrack(state.params, grads, merit0, config,
                        [&](const ModelParams& candidate) -> std::optional<double> {
                          const auto factor = SpdFactor::try_compute(candidate.lambda);
                          if (!factor) return std::nullopt;
                          trial.params = candidate;
                          return lagrangian(stats, trial, *factor) +
                                 l1_penalty(candidate, config.l1_weight);
                        },
                        [&](const ModelParams& candidate) {
                          trial.params = candidate;
                          return lagrangian_gradients(stats, trial);
                        });
  if (!step) throw LineSearchStalled("ADMM (Λ, Θ) step: no admissible step after backtracking");
  return step->params;
}

Matrix dual_update(const AdmmState& state) {
  if (!(state.mu > 0.0)) throw InvalidArgument("dual_update: mu must be positive");
  return symmetrize(state.dual + state.mu * residual(state.params, state.phi));
}

double penalty_update(double mu, const SolverConfig& config) {
  return std::min(config.mu_max, config.beta * mu);
}

FitResult fit_admm(const SufficientStats& stats, const SolverConfig& config,
                   const std::optional<ModelParams>& init) {
  stats.validate();
  config.validate();
  AdmmState state =
      AdmmState::initial(init ? *init : ModelParams::initial(stats.n(), stats.p()), config.mu0);

  const detail::Stopwatch clock;
  auto traced_objective = [&] {
    return objective(stats, state.params) + l1_penalty(state.params, config.l1_weight);
  };
  double f = traced_objective();
  if (!std::isfinite(f)) throw DegenerateData("objective is not finite at the initial point");

  FitResult result;
  result.trace.push_back({0, f, std::nullopt, residual(state.params, state.phi).norm(),
                          std::nullopt, state.mu, clock.elapsed_ms()});

  for (int iter = 1; iter <= config.max_iter; ++iter) {
    try {
      state.params = lambda_theta_step(stats, state, config);
    } catch (const LineSearchStalled&) {
      break;
    }
    const Matrix phi_next = phi_step(stats, state);
    const double dual_residual = state.mu * (phi_next - state.phi).norm();
    state.phi = phi_next;
    state.dual = dual_update(state);
    const double primal_residual = residual(state.params, state.phi).norm();
    state.mu = penalty_update(state.mu, config);
    state.iteration = iter;

    const double f_prev = f;
    f = traced_objective();
    result.trace.push_back({iter, f, std::nullopt, primal_residual, dual_residual, state.mu,
                            clock.elapsed_ms()});

    const double change = std::abs(f - f_prev) / (1.0 + std::abs(f));
    const double grad_norm =
        detail::stationarity_norm(state.params, lagrangian_gradients(stats, state), config.l1_weight);
    result.trace.back().grad_norm = grad_norm;
    if (primal_residual <= config.primal_tol && dual_residual <= config.dual_tol &&
        change <= config.grad_tol && grad_norm <= config.grad_tol * (1.0 + std::abs(f))) {
      result.converged = true;
      break;
    }
  }

  result.iterations = static_cast<int>(result.trace.size()) - 1;
  result.params = std::move(state.params);
  return result;
}

}  // namespace gcrf
