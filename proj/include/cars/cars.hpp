#pragma once

#include <variant>

#include "cars/oracle.hpp"
#include "cars/run.hpp"
#include "cars/sampling.hpp"

namespace cars {

// r_k ||u_k|| = C for every k.
struct FixedLimit {
  double C = 0.0;
};

// r_k ||u_k|| = c0 / (k + 2).
struct Decreasing {
  double c0 = 0.5;
};

using RadiusRule = std::variant<Decreasing, FixedLimit>;

enum class CurvaturePolicy {
  kSkipNonpositive,  // h_r <= 0: do not evaluate the Newton candidate
  kAlwaysAttempt,
};

struct CarsConfig {
  double L_hat = 2.0;
  RadiusRule radius = Decreasing{0.5};
  SamplerSpec sampler{};
  CurvaturePolicy curvature = CurvaturePolicy::kSkipNonpositive;

  // Throws kInvalidConfig.
  void validate() const;
};

// Hessian Hoelder data and accuracy target that fix the theory-mode radius.
struct HolderConstants {
  double a = 1.0;       // Hoelder exponent in (0, 1]
  double L_a = 1.0;     // Hoelder constant of the Hessian
  double mu = 1.0;      // strong convexity modulus
  double epsilon = 1e-6;
  double gamma = 1.0;   // in (0, 1]
};

// Largest step length any solver will take along a direction.
inline constexpr double kMaxStepNorm = 1e12;

struct FiniteDifferences {
  double d_r = 0.0;
  double h_r = 0.0;
  double f_plus = 0.0;   // f(x + r u)
  double f_minus = 0.0;  // f(x - r u)
};

// Central first and second differences along u with half-width r, reusing the
// cached fx = f(x). Exactly two queries.
FiniteDifferences central_differences(CountingOracle& oracle, const Vector& x,
                                      double fx, const Vector& u, double r);

double holder_c1(double a, double L_a);
double holder_c2(double a, double L_a);

// Scale-free sampling radius limit
//   C = min{ C1 (gamma sqrt(2 mu eps))^{1/(1+a)}, C2 mu^{1/a} }.
// Throws kInvalidConstants.
double radius_limit_C(const HolderConstants& hc);

// Worst-case finite-difference errors for an a-Hoelder Hessian:
//   |d_r - u^T g|     <= (r||u|| / C1)^{1+a} ||u|| / (2 sqrt 2)
//   |h_r - u^T H u|   <= (r||u|| / C2)^a ||u||^2 / (2 sqrt 2 + 2)
double first_difference_error_bound(double r, double u_norm, double a,
                                    double L_a);
double second_difference_error_bound(double r, double u_norm, double a,
                                     double L_a);

// gamma ||u|| sqrt(2 mu eps) <= |u^T g|. Offline diagnostic; needs the true
// gradient.
bool descent_event_holds(const Vector& u, const Vector& gradient, double gamma,
                         double mu, double epsilon);

// x - (d_r / (L_hat h_r)) u with the step length capped at kMaxStepNorm.
// Throws kNonpositiveCurvature when h_r <= 0 under kSkipNonpositive.
Vector cars_candidate(const Vector& x, const Vector& u, double d_r, double h_r,
                      double L_hat,
                      CurvaturePolicy policy = CurvaturePolicy::kSkipNonpositive);

// Radius along u for iteration k under the configured rule.
double cars_radius(const RadiusRule& rule, std::uint64_t k, double u_norm);

// One iteration: sample u, probe x +- r u, try the Newton candidate and move
// to the best of {candidate, x, x - r u, x + r u}. On kBudgetExhausted the
// state is left untouched.
IterationReport cars_step(SolverState& state, const CarsConfig& config,
                          DirectionSampler& sampler, CountingOracle& oracle);

struct Problem;

RunRecord run_cars(const Problem& problem, const CarsConfig& config,
                   DirectionSampler& sampler, CountingOracle& oracle,
                   const StopCriteria& stop,
                   const IterationCallback& on_iteration = {});

}  // namespace cars
