#pragma once

#include <optional>
#include <variant>

#include "cars/cars.hpp"

namespace cars {

// P(alpha; d, h) = d alpha + h alpha^2 / 2 + M |alpha|^3 / 6.
struct CubicModel {
  double d = 0.0;
  double h = 0.0;
  double M = 1.0;

  double value(double alpha) const noexcept;
  double derivative(double alpha) const noexcept;
  double minimizer() const noexcept;
};

// Global minimizer of P(.; d, h): -2d / (h + sqrt(h^2 + 2M|d|)).
// Requires M > 0, h >= 0.
double cubic_minimizer_phi(double d, double h, double M) noexcept;

// L_k = 1/2 + sqrt(1/4 + M|d_r| / (2 h_r^2)); -d_r / (L_k h_r) equals
// cubic_minimizer_phi(d_r, h_r, M). Throws kZeroCurvature for h_r == 0 and
// kInvalidConstants for h_r < 0 or M <= 0.
double adaptive_L_hat(double d_r, double h_r, double M);

// r_k = min(rho sqrt(eps) / sqrt(k + 2), R), rho = R / sqrt(2B).
struct CubicRadiusSchedule {
  double epsilon = 1e-6;
  double R = 1.0;
  std::optional<double> B;             // used as given when set
  std::optional<double> L_estimate;    // smoothness estimate for B
  std::optional<double> f_star_estimate;
};

struct CarsCrConfig {
  double M = 2.0;
  std::variant<Decreasing, CubicRadiusSchedule> radius = Decreasing{0.5};
  SamplerSpec sampler{};  // draws are always normalized

  void validate() const;
};

// B = max(L R^2, M R^3, f0 - f*) over whichever of L and f* are known. A
// given schedule.B is returned unchanged.
double estimate_B(const CubicRadiusSchedule& schedule, double M, double f0,
                  std::optional<double> problem_f_star);

double cubic_radius(const CubicRadiusSchedule& schedule, double B,
                    std::uint64_t k);

// Per-run constants the step needs beyond the config.
struct CarsCrContext {
  double B = 1.0;  // only read by the theory schedule
};

// One iteration: unit u, probe x +- r u, evaluate both cubic candidates
// x + phi(+-d_r, h_r) u and move to the best of the five points. Four queries.
IterationReport cr_step(SolverState& state, const CarsCrConfig& config,
                        const CarsCrContext& context, DirectionSampler& sampler,
                        CountingOracle& oracle);

RunRecord run_cars_cr(const Problem& problem, const CarsCrConfig& config,
                      DirectionSampler& sampler, CountingOracle& oracle,
                      const StopCriteria& stop,
                      const IterationCallback& on_iteration = {});

}  // namespace cars
