#include "cars/baselines.hpp"

#include <cmath>

#include "cars/error.hpp"
#include "cars/problems.hpp"

namespace cars {

double StpConfig::step(std::uint64_t k) const {
  if (step_schedule) return step_schedule(k);
  return 1.0 / std::sqrt(static_cast<double>(k + 1));
}

void StpConfig::validate() const {
  if (!(step(0) > 0.0)) {
    throw Error(ErrorCode::kInvalidConfig, "STP step sizes must be positive");
  }
}

double NesterovConfig::step(std::size_t dim) const {
  return alpha ? *alpha : 1.0 / (4.0 * (static_cast<double>(dim) + 4.0));
}

void NesterovConfig::validate() const {
  if ((alpha && !(*alpha > 0.0)) || !(mu_fd > 0.0)) {
    throw Error(ErrorCode::kInvalidConfig,
                "Nesterov-Spokoiny needs alpha > 0 and mu > 0");
  }
}

double SpsaConfig::gain_a(std::uint64_t k) const {
  return a / std::pow(A + static_cast<double>(k) + 1.0, alpha_exp);
}

double SpsaConfig::gain_c(std::uint64_t k) const {
  return c / std::pow(static_cast<double>(k) + 1.0, gamma_exp);
}

void SpsaConfig::validate() const {
  if (!(a > 0.0) || !(A >= 0.0) || !(alpha_exp > 0.0) || !(c > 0.0) ||
      !(gamma_exp > 0.0)) {
    throw Error(ErrorCode::kInvalidConfig, "SPSA gains must be positive");
  }
}

IterationReport stp_step(SolverState& state, const StpConfig& config,
                         DirectionSampler& sampler, CountingOracle& oracle) {
  const std::uint64_t start = oracle.count();
  IterationReport report;
  report.k = state.k;
  report.f_before = state.fx;

  const double alpha = config.step(state.k);
  const Vector u = sampler.next(oracle, state.x, alpha);
  Vector x_plus = state.x + alpha * u;
  Vector x_minus = state.x - alpha * u;
  const double f_plus = oracle.evaluate(x_plus);
  const double f_minus = oracle.evaluate(x_minus);

  report.radius = alpha;
  report.candidate_values = {state.fx, f_plus, f_minus};
  const std::size_t best = safeguard_argmin(report.candidate_values);
  if (best == 1) state.x = std::move(x_plus);
  if (best == 2) state.x = std::move(x_minus);
  state.fx = report.candidate_values[best];
  ++state.k;

  report.chosen = best;
  report.f_after = state.fx;
  report.queries = oracle.count() - start;
  return report;
}

IterationReport nesterov_spokoiny_step(SolverState& state,
                                       const NesterovConfig& config,
                                       DirectionSampler& sampler,
                                       CountingOracle& oracle) {
  const std::uint64_t start = oracle.count();
  IterationReport report;
  report.k = state.k;
  report.f_before = state.fx;

  const Vector u = sampler.next(oracle, state.x, config.mu_fd);
  const double f_probe = oracle.evaluate(state.x + config.mu_fd * u);
  const double slope = (f_probe - state.fx) / config.mu_fd;
  Vector next = state.x - config.step(state.x.size()) * slope * u;
  const double f_next = oracle.evaluate(next);

  report.radius = config.mu_fd;
  report.d_r = slope;
  report.candidate_values = {f_next};
  state.x = std::move(next);
  state.fx = f_next;
  ++state.k;

  report.f_after = state.fx;
  report.queries = oracle.count() - start;
  return report;
}

IterationReport spsa_step(SolverState& state, const SpsaConfig& config,
                          DirectionSampler& sampler, CountingOracle& oracle) {
  const std::uint64_t start = oracle.count();
  IterationReport report;
  report.k = state.k;
  report.f_before = state.fx;

  const double ak = config.gain_a(state.k);
  const double ck = config.gain_c(state.k);
  const Vector delta = sampler.next(oracle, state.x, ck);
  const double f_plus = oracle.evaluate(state.x + ck * delta);
  const double f_minus = oracle.evaluate(state.x - ck * delta);
  const double diff = (f_plus - f_minus) / (2.0 * ck);
  const Vector g = diff * delta.cwiseInverse();
  Vector next = state.x - ak * g;
  const double f_next = oracle.evaluate(next);

  report.radius = ck;
  report.d_r = diff;
  report.step_scale = ak;
  report.candidate_values = {f_next};
  state.x = std::move(next);
  state.fx = f_next;
  ++state.k;

  report.f_after = state.fx;
  report.queries = oracle.count() - start;
  return report;
}

RunRecord run_stp(const Problem& problem, const StpConfig& config,
                  DirectionSampler& sampler, CountingOracle& oracle,
                  const StopCriteria& stop,
                  const IterationCallback& on_iteration) {
  config.validate();
  RunRecord record = detail::drive(
      problem.name, problem.f_star, problem.x0, oracle, stop,
      [&](SolverState& s) { return stp_step(s, config, sampler, oracle); },
      on_iteration);
  record.solver = "stp";
  return record;
}

RunRecord run_nesterov_spokoiny(const Problem& problem,
                                const NesterovConfig& config,
                                DirectionSampler& sampler,
                                CountingOracle& oracle,
                                const StopCriteria& stop,
                                const IterationCallback& on_iteration) {
  config.validate();
  RunRecord record = detail::drive(
      problem.name, problem.f_star, problem.x0, oracle, stop,
      [&](SolverState& s) {
        return nesterov_spokoiny_step(s, config, sampler, oracle);
      },
      on_iteration);
  record.solver = "nesterov-spokoiny";
  return record;
}

RunRecord run_spsa(const Problem& problem, const SpsaConfig& config,
                   DirectionSampler& sampler, CountingOracle& oracle,
                   const StopCriteria& stop,
                   const IterationCallback& on_iteration) {
  config.validate();
  RunRecord record = detail::drive(
      problem.name, problem.f_star, problem.x0, oracle, stop,
      [&](SolverState& s) { return spsa_step(s, config, sampler, oracle); },
      on_iteration);
  record.solver = "spsa";
  return record;
}

}  // namespace cars
