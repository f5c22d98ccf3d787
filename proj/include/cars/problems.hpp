#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cars/linalg.hpp"
#include "cars/oracle.hpp"

namespace cars {

// Constants some tests need to evaluate theory-side quantities.
struct SmoothnessConstants {
  std::optional<double> L;
  std::optional<double> mu;
  std::optional<double> L_a;
  std::optional<double> a;
};

struct Problem {
  std::string name;
  std::size_t dim = 0;
  Objective objective;
  Vector x0;
  std::optional<double> f_star;
  std::optional<Vector> x_star;  // set when a minimizer is known in closed form
  SmoothnessConstants constants;

  double operator()(const Vector& x) const { return objective.eval(x); }
};

// f(x) = alpha sum x_i^4 + x^T A x / 2 + beta ||x||^2, A = G^T G with G_ij
// iid N(0, 1) drawn from `seed`. Minimum 0 at the origin.
struct QuarticInstance {
  Problem problem;
  Matrix A;
};

QuarticInstance make_quartic_instance(std::size_t d, double alpha, double beta,
                                      std::uint64_t seed);
Problem make_quartic(std::size_t d, double alpha, double beta,
                     std::uint64_t seed);

// f(x) = x^T Q diag(lambda) Q^T x / 2 with lambda evenly spaced on
// [1, condition] and Q a random rotation. Start x0 = (1, ..., 1).
struct QuadraticInstance {
  Problem problem;
  Matrix H;
};

QuadraticInstance make_quadratic_instance(std::size_t d, double condition,
                                          std::uint64_t seed);
Problem make_quadratic(std::size_t d, double condition, std::uint64_t seed);

// Sum-of-squares problems from the More-Garbow-Hillstrom collection with the
// collection's recommended starting points.
std::vector<Problem> mgh_suite();
std::vector<std::string> mgh_names();

inline constexpr std::uint64_t kDefaultInstanceSeed = 1;

// Registry: every mgh_suite() name plus "quartic-d30" and "quadratic-d10".
// Throws kUnknownProblem.
Problem lookup(std::string_view name);
std::vector<std::string> registered_problems();

}  // namespace cars
