#include "cars/problems.hpp"

#include <cmath>
#include <functional>
#include <memory>
#include <numbers>
#include <random>
#include <string>

#include "cars/error.hpp"

namespace cars {
namespace {

using Residuals = std::function<Vector(const Vector&)>;

Objective sum_of_squares(std::size_t dim, Residuals residuals) {
  return {dim, [res = std::move(residuals)](const Vector& x) {
            return res(x).squaredNorm();
          }};
}

Problem mgh(std::string name, Vector x0, Residuals residuals,
            std::optional<Vector> x_star) {
  Problem p;
  p.name = std::move(name);
  p.dim = static_cast<std::size_t>(x0.size());
  p.objective = sum_of_squares(p.dim, std::move(residuals));
  p.x0 = std::move(x0);
  p.f_star = 0.0;
  p.x_star = std::move(x_star);
  return p;
}

Vector vec(std::initializer_list<double> values) {
  Vector v(values.size());
  std::size_t i = 0;
  for (double x : values) v[i++] = x;
  return v;
}

Problem rosenbrock() {
  return mgh("rosenbrock", vec({-1.2, 1.0}),
             [](const Vector& x) {
               return vec({10.0 * (x[1] - x[0] * x[0]), 1.0 - x[0]});
             },
             vec({1.0, 1.0}));
}

Problem freudenstein_roth() {
  return mgh("freudenstein-roth", vec({0.5, -2.0}),
             [](const Vector& x) {
               return vec({-13.0 + x[0] + ((5.0 - x[1]) * x[1] - 2.0) * x[1],
                           -29.0 + x[0] + ((x[1] + 1.0) * x[1] - 14.0) * x[1]});
             },
             vec({5.0, 4.0}));
}

Problem powell_badly_scaled() {
  // Minimizer (1.098...e-5, 9.106...) has no closed form.
  return mgh("powell-badly-scaled", vec({0.0, 1.0}),
             [](const Vector& x) {
               return vec({1e4 * x[0] * x[1] - 1.0,
                           std::exp(-x[0]) + std::exp(-x[1]) - 1.0001});
             },
             std::nullopt);
}

Problem brown_badly_scaled() {
  return mgh("brown-badly-scaled", vec({1.0, 1.0}),
             [](const Vector& x) {
               return vec({x[0] - 1e6, x[1] - 2e-6, x[0] * x[1] - 2.0});
             },
             vec({1e6, 2e-6}));
}

Problem beale() {
  return mgh("beale", vec({1.0, 1.0}),
             [](const Vector& x) {
               const double y[3] = {1.5, 2.25, 2.625};
               Vector r(3);
               for (int i = 0; i < 3; ++i) {
                 r[i] = y[i] - x[0] * (1.0 - std::pow(x[1], i + 1));
               }
               return r;
             },
             vec({3.0, 0.5}));
}

Problem helical_valley() {
  return mgh("helical-valley", vec({-1.0, 0.0, 0.0}),
             [](const Vector& x) {
               // theta in [-1/4, 3/4): arctan(x2/x1)/(2 pi), +1/2 when x1 < 0.
               double theta = std::atan2(x[1], x[0]) / (2.0 * std::numbers::pi);
               if (theta < -0.25) theta += 1.0;
               return vec({10.0 * (x[2] - 10.0 * theta),
                           10.0 * (std::hypot(x[0], x[1]) - 1.0), x[2]});
             },
             vec({1.0, 0.0, 0.0}));
}

Vector powell_block(const Vector& x, Eigen::Index o) {
  return vec({x[o] + 10.0 * x[o + 1], std::sqrt(5.0) * (x[o + 2] - x[o + 3]),
              std::pow(x[o + 1] - 2.0 * x[o + 2], 2),
              std::sqrt(10.0) * std::pow(x[o] - x[o + 3], 2)});
}

Problem extended_powell(std::string name, std::size_t n) {
  Vector x0(n);
  for (std::size_t i = 0; i < n; i += 4) {
    x0.segment(static_cast<Eigen::Index>(i), 4) = vec({3.0, -1.0, 0.0, 1.0});
  }
  return mgh(std::move(name), x0,
             [n](const Vector& x) {
               Vector r(n);
               for (std::size_t i = 0; i < n; i += 4) {
                 const auto o = static_cast<Eigen::Index>(i);
                 r.segment(o, 4) = powell_block(x, o);
               }
               return r;
             },
             Vector::Zero(n));
}

Problem wood() {
  return mgh("wood", vec({-3.0, -1.0, -3.0, -1.0}),
             [](const Vector& x) {
               return vec({10.0 * (x[1] - x[0] * x[0]), 1.0 - x[0],
                           std::sqrt(90.0) * (x[3] - x[2] * x[2]), 1.0 - x[2],
                           std::sqrt(10.0) * (x[1] + x[3] - 2.0),
                           (x[1] - x[3]) / std::sqrt(10.0)});
             },
             Vector::Ones(4));
}

Problem extended_rosenbrock(std::size_t n) {
  Vector x0(n);
  for (std::size_t i = 0; i < n; i += 2) {
    x0[i] = -1.2;
    x0[i + 1] = 1.0;
  }
  return mgh("extended-rosenbrock", x0,
             [n](const Vector& x) {
               Vector r(n);
               for (std::size_t i = 0; i < n; i += 2) {
                 r[i] = 10.0 * (x[i + 1] - x[i] * x[i]);
                 r[i + 1] = 1.0 - x[i];
               }
               return r;
             },
             Vector::Ones(n));
}

Problem trigonometric(std::size_t n) {
  const double dn = static_cast<double>(n);
  return mgh("trigonometric", Vector::Constant(n, 1.0 / dn),
             [n, dn](const Vector& x) {
               const double cos_sum = x.array().cos().sum();
               Vector r(n);
               for (std::size_t i = 0; i < n; ++i) {
                 r[i] = dn - cos_sum + static_cast<double>(i + 1) * (1.0 - std::cos(x[i])) -
                        std::sin(x[i]);
               }
               return r;
             },
             Vector::Zero(n));
}

Problem variably_dimensioned(std::size_t n) {
  Vector x0(n);
  for (std::size_t j = 0; j < n; ++j) {
    x0[j] = 1.0 - static_cast<double>(j + 1) / static_cast<double>(n);
  }
  return mgh("variably-dimensioned", x0,
             [n](const Vector& x) {
               Vector r(n + 2);
               double weighted = 0.0;
               for (std::size_t j = 0; j < n; ++j) {
                 r[j] = x[j] - 1.0;
                 weighted += static_cast<double>(j + 1) * (x[j] - 1.0);
               }
               r[n] = weighted;
               r[n + 1] = weighted * weighted;
               return r;
             },
             Vector::Ones(n));
}

Problem box_3d() {
  return mgh("box-3d", vec({0.0, 10.0, 20.0}),
             [](const Vector& x) {
               Vector r(10);
               for (int i = 0; i < 10; ++i) {
                 const double t = 0.1 * (i + 1);
                 r[i] = std::exp(-t * x[0]) - std::exp(-t * x[1]) -
                        x[2] * (std::exp(-t) - std::exp(-10.0 * t));
               }
               return r;
             },
             vec({1.0, 10.0, 1.0}));
}

Problem biggs_exp6() {
  return mgh("biggs-exp6", vec({1.0, 2.0, 1.0, 1.0, 1.0, 1.0}),
             [](const Vector& x) {
               Vector r(13);
               for (int i = 0; i < 13; ++i) {
                 const double t = 0.1 * (i + 1);
                 const double y = std::exp(-t) - 5.0 * std::exp(-10.0 * t) +
                                  3.0 * std::exp(-4.0 * t);
                 r[i] = x[2] * std::exp(-t * x[0]) - x[3] * std::exp(-t * x[1]) +
                        x[5] * std::exp(-t * x[4]) - y;
               }
               return r;
             },
             vec({1.0, 10.0, 1.0, 5.0, 4.0, 3.0}));
}

Problem brown_almost_linear(std::size_t n) {
  return mgh("brown-almost-linear", Vector::Constant(n, 0.5),
             [n](const Vector& x) {
               const double sum = x.sum();
               Vector r(n);
               for (std::size_t i = 0; i + 1 < n; ++i) {
                 r[i] = x[i] + sum - static_cast<double>(n + 1);
               }
               r[n - 1] = x.prod() - 1.0;
               return r;
             },
             Vector::Ones(n));
}

Problem broyden_tridiagonal(std::size_t n) {
  return mgh("broyden-tridiagonal", Vector::Constant(n, -1.0),
             [n](const Vector& x) {
               Vector r(n);
               for (std::size_t i = 0; i < n; ++i) {
                 const double prev = i > 0 ? x[i - 1] : 0.0;
                 const double next = i + 1 < n ? x[i + 1] : 0.0;
                 r[i] = (3.0 - 2.0 * x[i]) * x[i] - prev - 2.0 * next + 1.0;
               }
               return r;
             },
             std::nullopt);
}

Matrix gaussian_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix G(rows, cols);
  for (Eigen::Index i = 0; i < G.rows(); ++i) {
    for (Eigen::Index j = 0; j < G.cols(); ++j) G(i, j) = normal(engine);
  }
  return G;
}

}  // namespace

QuarticInstance make_quartic_instance(std::size_t d, double alpha, double beta,
                                      std::uint64_t seed) {
  if (d == 0 || !(alpha > 0.0) || !(beta > 0.0)) {
    throw Error(ErrorCode::kInvalidConfig, "quartic needs d >= 1, alpha > 0, beta > 0");
  }
  const Matrix G = gaussian_matrix(d, d, seed);
  auto A = std::make_shared<const Matrix>(G.transpose() * G);

  QuarticInstance out;
  out.A = *A;
  Problem& p = out.problem;
  p.name = "quartic-d" + std::to_string(d);
  p.dim = d;
  p.objective = {d, [A, alpha, beta](const Vector& x) {
                   return alpha * x.array().pow(4).sum() + 0.5 * x.dot(*A * x) +
                          beta * x.squaredNorm();
                 }};
  p.x0 = Vector::Ones(d);
  p.f_star = 0.0;
  p.x_star = Vector::Zero(d);
  const Eigen::SelfAdjointEigenSolver<Matrix> eig(*A);
  p.constants.mu = eig.eigenvalues().minCoeff() + 2.0 * beta;
  return out;
}

Problem make_quartic(std::size_t d, double alpha, double beta, std::uint64_t seed) {
  return make_quartic_instance(d, alpha, beta, seed).problem;
}

QuadraticInstance make_quadratic_instance(std::size_t d, double condition,
                                          std::uint64_t seed) {
  if (d == 0 || !(condition >= 1.0)) {
    throw Error(ErrorCode::kInvalidConfig, "quadratic needs d >= 1, condition >= 1");
  }
  const Matrix Q = Eigen::HouseholderQR<Matrix>(gaussian_matrix(d, d, seed))
                       .householderQ() * Matrix::Identity(d, d);
  Vector lambda(d);
  for (std::size_t i = 0; i < d; ++i) {
    lambda[i] = d == 1 ? 1.0
                       : 1.0 + (condition - 1.0) * static_cast<double>(i) /
                                   static_cast<double>(d - 1);
  }
  Matrix H = Q * lambda.asDiagonal() * Q.transpose();
  H = 0.5 * (H + H.transpose()).eval();
  auto shared = std::make_shared<const Matrix>(H);

  QuadraticInstance out;
  out.H = H;
  Problem& p = out.problem;
  p.name = "quadratic-d" + std::to_string(d);
  p.dim = d;
  p.objective = {d, [shared](const Vector& x) { return 0.5 * x.dot(*shared * x); }};
  p.x0 = Vector::Ones(d);
  p.f_star = 0.0;
  p.x_star = Vector::Zero(d);
  p.constants.L = lambda.maxCoeff();
  p.constants.mu = lambda.minCoeff();
  return out;
}

Problem make_quadratic(std::size_t d, double condition, std::uint64_t seed) {
  return make_quadratic_instance(d, condition, seed).problem;
}

std::vector<Problem> mgh_suite() {
  return {rosenbrock(),
          freudenstein_roth(),
          powell_badly_scaled(),
          brown_badly_scaled(),
          beale(),
          helical_valley(),
          extended_powell("powell-singular", 4),
          wood(),
          extended_rosenbrock(10),
          extended_powell("extended-powell", 12),
          trigonometric(10),
          variably_dimensioned(10),
          box_3d(),
          biggs_exp6(),
          brown_almost_linear(10),
          broyden_tridiagonal(10)};
}

std::vector<std::string> mgh_names() {
  std::vector<std::string> names;
  for (const Problem& p : mgh_suite()) names.push_back(p.name);
  return names;
}

std::vector<std::string> registered_problems() {
  std::vector<std::string> names = mgh_names();
  names.push_back("quartic-d30");
  names.push_back("quadratic-d10");
  return names;
}

Problem lookup(std::string_view name) {
  if (name == "quartic-d30") return make_quartic(30, 0.1, 0.01, kDefaultInstanceSeed);
  if (name == "quadratic-d10") return make_quadratic(10, 10.0, kDefaultInstanceSeed);
  for (Problem& p : mgh_suite()) {
    if (p.name == name) return std::move(p);
  }
  throw Error(ErrorCode::kUnknownProblem, "unknown problem '" + std::string(name) + "'");
}

}  // namespace cars
