#include "cars/cars_cr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cars/error.hpp"
#include "cars/problems.hpp"

namespace cars {
namespace {

double capped(double alpha) {
  if (std::isnan(alpha)) return 0.0;
  return std::clamp(alpha, -kMaxStepNorm, kMaxStepNorm);
}

}  // namespace

double CubicModel::value(double alpha) const noexcept {
  return d * alpha + 0.5 * h * alpha * alpha +
         M / 6.0 * std::abs(alpha) * alpha * alpha;
}

double CubicModel::derivative(double alpha) const noexcept {
  return d + h * alpha + 0.5 * M * std::abs(alpha) * alpha;
}

double CubicModel::minimizer() const noexcept {
  return cubic_minimizer_phi(d, h, M);
}

double cubic_minimizer_phi(double d, double h, double M) noexcept {
  if (d == 0.0) return 0.0;
  // The (h - sqrt(.)) / M form cancels badly when M|d| << h^2.
  return -2.0 * d / (h + std::sqrt(h * h + 2.0 * M * std::abs(d)));
}

double adaptive_L_hat(double d_r, double h_r, double M) {
  if (!(M > 0.0)) throw Error(ErrorCode::kInvalidConstants, "M must be positive");
  if (h_r == 0.0) {
    throw Error(ErrorCode::kZeroCurvature, "adaptive L_hat undefined for h_r = 0");
  }
  if (!(h_r > 0.0)) {
    throw Error(ErrorCode::kInvalidConstants, "adaptive L_hat needs h_r > 0");
  }
  return 0.5 + std::sqrt(0.25 + M * std::abs(d_r) / (2.0 * h_r * h_r));
}

void CarsCrConfig::validate() const {
  if (!(M > 0.0) || !std::isfinite(M)) {
    throw Error(ErrorCode::kInvalidConfig, "M must be positive");
  }
  std::visit(
      [](const auto& rule) {
        using T = std::decay_t<decltype(rule)>;
        if constexpr (std::is_same_v<T, CubicRadiusSchedule>) {
          if (!(rule.epsilon > 0.0) || !(rule.R > 0.0) || (rule.B && !(*rule.B > 0.0))) {
            throw Error(ErrorCode::kInvalidConfig,
                        "radius schedule needs epsilon > 0, R > 0, B > 0");
          }
        } else {
          if (!(rule.c0 > 0.0)) {
            throw Error(ErrorCode::kInvalidConfig, "radius constant must be positive");
          }
        }
      },
      radius);
}

double estimate_B(const CubicRadiusSchedule& schedule, double M, double f0,
                  std::optional<double> problem_f_star) {
  if (schedule.B) return *schedule.B;
  const double R = schedule.R;
  double B = M * R * R * R;
  if (schedule.L_estimate) B = std::max(B, *schedule.L_estimate * R * R);
  const std::optional<double> f_star =
      schedule.f_star_estimate ? schedule.f_star_estimate : problem_f_star;
  if (f_star && std::isfinite(f0)) B = std::max(B, f0 - *f_star);
  return B;
}

double cubic_radius(const CubicRadiusSchedule& schedule, double B,
                    std::uint64_t k) {
  const double rho = schedule.R / std::sqrt(2.0 * B);
  return std::min(rho * std::sqrt(schedule.epsilon) /
                      std::sqrt(static_cast<double>(k + 2)),
                  schedule.R);
}

IterationReport cr_step(SolverState& state, const CarsCrConfig& config,
                        const CarsCrContext& context, DirectionSampler& sampler,
                        CountingOracle& oracle) {
  const std::uint64_t start = oracle.count();
  IterationReport report;
  report.k = state.k;
  report.f_before = state.fx;

  const double r = std::visit(
      [&](const auto& rule) {
        using T = std::decay_t<decltype(rule)>;
        if constexpr (std::is_same_v<T, CubicRadiusSchedule>) {
          return cubic_radius(rule, context.B, state.k);
        } else {
          return rule.c0 / static_cast<double>(state.k + 2);
        }
      },
      config.radius);

  Vector u = sampler.next(oracle, state.x, r);
  const double u_norm = u.norm();
  if (!(u_norm > 0.0) || !std::isfinite(u_norm)) {
    report.candidate_skipped = true;
    report.candidate_values = {state.fx};
    report.f_after = state.fx;
    report.queries = oracle.count() - start;
    ++state.k;
    return report;
  }
  u /= u_norm;

  const FiniteDifferences fd = central_differences(oracle, state.x, state.fx, u, r);
  report.radius = r;
  report.d_r = fd.d_r;
  report.h_r = fd.h_r;
  report.step_scale = fd.h_r > 0.0 ? adaptive_L_hat(fd.d_r, fd.h_r, config.M)
                                   : std::numeric_limits<double>::infinity();

  // Negative curvature (nonconvex f) is clamped; phi is defined at h = 0.
  const double h = fd.h_r > 0.0 ? fd.h_r : 0.0;
  const double alpha_plus = capped(cubic_minimizer_phi(-fd.d_r, h, config.M));
  const double alpha_minus = capped(cubic_minimizer_phi(fd.d_r, h, config.M));
  Vector x_plus = state.x + alpha_plus * u;
  Vector x_minus = state.x + alpha_minus * u;
  const double f_cr_plus = oracle.evaluate(x_plus);
  const double f_cr_minus = oracle.evaluate(x_minus);

  report.candidate_values = {f_cr_plus, f_cr_minus, state.fx, fd.f_minus, fd.f_plus};
  const std::size_t best = safeguard_argmin(report.candidate_values);
  switch (best) {
    case 0: state.x = std::move(x_plus); break;
    case 1: state.x = std::move(x_minus); break;
    case 3: state.x = state.x - r * u; break;
    case 4: state.x = state.x + r * u; break;
    default: break;
  }
  state.fx = report.candidate_values[best];
  ++state.k;

  report.chosen = best;
  report.f_after = state.fx;
  report.queries = oracle.count() - start;
  return report;
}

RunRecord run_cars_cr(const Problem& problem, const CarsCrConfig& config,
                      DirectionSampler& sampler, CountingOracle& oracle,
                      const StopCriteria& stop,
                      const IterationCallback& on_iteration) {
  config.validate();
  std::optional<CarsCrContext> context;
  RunRecord record = detail::drive(
      problem.name, problem.f_star, problem.x0, oracle, stop,
      [&](SolverState& s) {
        if (!context) {
          context.emplace();
          if (const auto* schedule = std::get_if<CubicRadiusSchedule>(&config.radius)) {
            context->B = estimate_B(*schedule, config.M, s.fx, problem.f_star);
          }
        }
        return cr_step(s, config, *context, sampler, oracle);
      },
      on_iteration);
  record.solver = "cars-cr";
  return record;
}

}  // namespace cars
