#pragma once

#include <functional>
#include <optional>

#include "cars/oracle.hpp"
#include "cars/run.hpp"
#include "cars/sampling.hpp"

namespace cars {

struct Problem;

// Stochastic three points: x+ = argmin{f(x), f(x + a_k u), f(x - a_k u)}.
struct StpConfig {
  // a_k; defaults to 1 / sqrt(k + 1).
  std::function<double(std::uint64_t)> step_schedule;
  SamplerSpec sampler{};

  double step(std::uint64_t k) const;
  void validate() const;
};

// Nesterov-Spokoiny random search with a forward difference.
struct NesterovConfig {
  std::optional<double> alpha;  // defaults to 1 / (4 (d + 4))
  double mu_fd = 1e-4;
  SamplerSpec sampler{DirectionKind::kGaussian};

  double step(std::size_t dim) const;
  void validate() const;
};

// SPSA with a_k = a / (A + k + 1)^alpha, c_k = c / (k + 1)^gamma.
struct SpsaConfig {
  double a = 0.16;
  double A = 100.0;
  double alpha_exp = 0.602;
  double c = 1e-4;
  double gamma_exp = 0.101;
  SamplerSpec sampler{DirectionKind::kRademacher};

  double gain_a(std::uint64_t k) const;
  double gain_c(std::uint64_t k) const;
  void validate() const;
};

// Two queries.
IterationReport stp_step(SolverState& state, const StpConfig& config,
                         DirectionSampler& sampler, CountingOracle& oracle);
// Two queries: the forward probe and the new iterate.
IterationReport nesterov_spokoiny_step(SolverState& state,
                                       const NesterovConfig& config,
                                       DirectionSampler& sampler,
                                       CountingOracle& oracle);
// Three queries: x +- c_k Delta and the new iterate.
IterationReport spsa_step(SolverState& state, const SpsaConfig& config,
                          DirectionSampler& sampler, CountingOracle& oracle);

RunRecord run_stp(const Problem& problem, const StpConfig& config,
                  DirectionSampler& sampler, CountingOracle& oracle,
                  const StopCriteria& stop,
                  const IterationCallback& on_iteration = {});
RunRecord run_nesterov_spokoiny(const Problem& problem,
                                const NesterovConfig& config,
                                DirectionSampler& sampler,
                                CountingOracle& oracle,
                                const StopCriteria& stop,
                                const IterationCallback& on_iteration = {});
RunRecord run_spsa(const Problem& problem, const SpsaConfig& config,
                   DirectionSampler& sampler, CountingOracle& oracle,
                   const StopCriteria& stop,
                   const IterationCallback& on_iteration = {});

}  // namespace cars
