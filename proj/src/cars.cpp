#include "cars/cars.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "cars/error.hpp"
#include "cars/problems.hpp"

namespace cars {
namespace {

constexpr double kSqrt2 = 1.41421356237309504880;

void require_holder(double a, double L_a) {
  if (!(a > 0.0) || a > 1.0 || !(L_a > 0.0) || !std::isfinite(L_a)) {
    throw Error(ErrorCode::kInvalidConstants,
                "Hoelder constants need a in (0, 1] and L_a > 0");
  }
}

double numerator(double a) { return (a + 1.0) * (a + 2.0); }

}  // namespace

void CarsConfig::validate() const {
  if (!(L_hat > 0.0) || !std::isfinite(L_hat)) {
    throw Error(ErrorCode::kInvalidConfig, "L_hat must be positive");
  }
  const bool radius_ok = std::visit(
      [](const auto& rule) {
        using T = std::decay_t<decltype(rule)>;
        if constexpr (std::is_same_v<T, FixedLimit>) {
          return rule.C > 0.0 && std::isfinite(rule.C);
        } else {
          return rule.c0 > 0.0 && std::isfinite(rule.c0);
        }
      },
      radius);
  if (!radius_ok) {
    throw Error(ErrorCode::kInvalidConfig, "radius constant must be positive");
  }
}

FiniteDifferences central_differences(CountingOracle& oracle, const Vector& x,
                                      double fx, const Vector& u, double r) {
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw Error(ErrorCode::kInvalidConfig, "difference radius must be positive");
  }
  FiniteDifferences out;
  out.f_plus = oracle.evaluate(x + r * u);
  out.f_minus = oracle.evaluate(x - r * u);
  out.d_r = (out.f_plus - out.f_minus) / (2.0 * r);
  out.h_r = (out.f_plus - 2.0 * fx + out.f_minus) / (r * r);
  return out;
}

double holder_c1(double a, double L_a) {
  require_holder(a, L_a);
  return std::pow(numerator(a) / (std::pow(2.0, 0.5 + a) * L_a), 1.0 / (1.0 + a));
}

double holder_c2(double a, double L_a) {
  require_holder(a, L_a);
  return std::pow(numerator(a) / (4.0 * (kSqrt2 + 1.0) * L_a), 1.0 / a);
}

double radius_limit_C(const HolderConstants& hc) {
  require_holder(hc.a, hc.L_a);
  if (!(hc.mu > 0.0) || !(hc.epsilon > 0.0) || !(hc.gamma > 0.0) ||
      hc.gamma > 1.0) {
    throw Error(ErrorCode::kInvalidConstants,
                "need mu > 0, epsilon > 0 and gamma in (0, 1]");
  }
  // C1 (gamma sqrt(2 mu eps))^{1/(1+a)} folded into a single power.
  const double first =
      std::pow(numerator(hc.a) * hc.gamma * std::sqrt(2.0 * hc.mu * hc.epsilon) /
                   (std::pow(2.0, 0.5 + hc.a) * hc.L_a),
               1.0 / (1.0 + hc.a));
  const double second = std::pow(
      numerator(hc.a) * hc.mu / (4.0 * (kSqrt2 + 1.0) * hc.L_a), 1.0 / hc.a);
  return std::min(first, second);
}

double first_difference_error_bound(double r, double u_norm, double a,
                                    double L_a) {
  return std::pow(r * u_norm / holder_c1(a, L_a), 1.0 + a) * u_norm /
         (2.0 * kSqrt2);
}

double second_difference_error_bound(double r, double u_norm, double a,
                                     double L_a) {
  return std::pow(r * u_norm / holder_c2(a, L_a), a) * u_norm * u_norm /
         (2.0 * kSqrt2 + 2.0);
}

bool descent_event_holds(const Vector& u, const Vector& gradient, double gamma,
                         double mu, double epsilon) {
  return gamma * u.norm() * std::sqrt(2.0 * mu * epsilon) <=
         std::abs(u.dot(gradient));
}

Vector cars_candidate(const Vector& x, const Vector& u, double d_r, double h_r,
                      double L_hat, CurvaturePolicy policy) {
  if (policy == CurvaturePolicy::kSkipNonpositive && !(h_r > 0.0)) {
    throw Error(ErrorCode::kNonpositiveCurvature,
                "h_r = " + std::to_string(h_r) + " is not positive");
  }
  double alpha = -d_r / (L_hat * h_r);
  if (std::isnan(alpha)) alpha = 0.0;
  const double u_norm = u.norm();
  if (std::abs(alpha) * u_norm > kMaxStepNorm) {
    alpha = std::copysign(kMaxStepNorm / u_norm, alpha);
  }
  return x + alpha * u;
}

double cars_radius(const RadiusRule& rule, std::uint64_t k, double u_norm) {
  return std::visit(
      [&](const auto& r) {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, FixedLimit>) {
          return r.C / u_norm;
        } else {
          return r.c0 / (static_cast<double>(k + 2) * u_norm);
        }
      },
      rule);
}

IterationReport cars_step(SolverState& state, const CarsConfig& config,
                          DirectionSampler& sampler, CountingOracle& oracle) {
  const std::uint64_t start = oracle.count();
  IterationReport report;
  report.k = state.k;
  report.f_before = state.fx;
  report.step_scale = config.L_hat;

  const Vector u = sampler.next(oracle, state.x, cars_radius(config.radius, state.k, 1.0));
  const double u_norm = u.norm();
  if (!(u_norm > 0.0) || !std::isfinite(u_norm)) {
    // Nothing to probe along; only the direction draw was charged.
    report.candidate_skipped = true;
    report.candidate_values = {std::numeric_limits<double>::quiet_NaN(), state.fx};
    report.chosen = 1;
    report.f_after = state.fx;
    report.queries = oracle.count() - start;
    ++state.k;
    return report;
  }

  const double r = cars_radius(config.radius, state.k, u_norm);
  const FiniteDifferences fd = central_differences(oracle, state.x, state.fx, u, r);
  report.radius = r;
  report.d_r = fd.d_r;
  report.h_r = fd.h_r;

  // Slots: Newton candidate, x_k, x_k - r u, x_k + r u.
  Vector newton;
  double f_newton = std::numeric_limits<double>::quiet_NaN();
  report.candidate_skipped =
      config.curvature == CurvaturePolicy::kSkipNonpositive && !(fd.h_r > 0.0);
  if (!report.candidate_skipped) {
    newton = cars_candidate(state.x, u, fd.d_r, fd.h_r, config.L_hat, config.curvature);
    f_newton = oracle.evaluate(newton);
  }
  report.candidate_values = {f_newton, state.fx, fd.f_minus, fd.f_plus};

  const std::size_t best =
      safeguard_argmin(report.candidate_values, report.candidate_skipped ? 1 : 0);

  switch (best) {
    case 0: state.x = std::move(newton); break;
    case 2: state.x = state.x - r * u; break;
    case 3: state.x = state.x + r * u; break;
    default: break;
  }
  state.fx = report.candidate_values[best];
  ++state.k;

  report.chosen = best;
  report.f_after = state.fx;
  report.queries = oracle.count() - start;
  return report;
}

RunRecord run_cars(const Problem& problem, const CarsConfig& config,
                   DirectionSampler& sampler, CountingOracle& oracle,
                   const StopCriteria& stop,
                   const IterationCallback& on_iteration) {
  config.validate();
  RunRecord record = detail::drive(
      problem.name, problem.f_star, problem.x0, oracle, stop,
      [&](SolverState& s) { return cars_step(s, config, sampler, oracle); },
      on_iteration);
  record.solver = "cars";
  return record;
}

}  // namespace cars
