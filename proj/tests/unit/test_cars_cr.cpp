#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "cars/cars_cr.hpp"
#include "cars/error.hpp"
#include "cars/problems.hpp"
#include "cars/solvers.hpp"

using cars::CarsCrConfig;
using cars::CountingOracle;
using cars::CubicModel;
using cars::CubicRadiusSchedule;
using cars::DirectionKind;
using cars::DirectionSampler;
using cars::SolverState;
using cars::Vector;

namespace {

double model(double d, double h, double M, double a) {
  return d * a + h * a * a / 2 + M * std::abs(a) * a * a / 6;
}

double grid_min(double d, double h, double M, double lo, double hi, double step) {
  double best = model(d, h, M, 0.0);
  for (double a = lo; a <= hi; a += step) best = std::min(best, model(d, h, M, a));
  return best;
}

}  // namespace

TEST(Phi, ZeroSlopeGivesZero) {
  for (double h : {0.0, 1.0, 7.5}) {
    for (double M : {1e-6, 1.0, 40.0}) EXPECT_EQ(cars::cubic_minimizer_phi(0.0, h, M), 0.0);
  }
}

TEST(Phi, WorkedExampleStationaryAndGlobal) {
  const double phi = cars::cubic_minimizer_phi(-4.0, 2.0, 6.0);
  EXPECT_NEAR(phi, 8.0 / (2.0 + std::sqrt(52.0)), 1e-15);
  EXPECT_NEAR(phi, 0.868517, 1e-6);
  EXPECT_NEAR(-4.0 + 2.0 * phi + 3.0 * phi * phi, 0.0, 1e-9);
  const double p = model(-4.0, 2.0, 6.0, phi);
  for (double a = -10.0; a <= 10.0; a += 1e-3) EXPECT_LE(p, model(-4.0, 2.0, 6.0, a) + 1e-12);
}

TEST(Phi, ZeroCurvatureExample) {
  const double phi = cars::cubic_minimizer_phi(2.0, 0.0, 1.0);
  EXPECT_DOUBLE_EQ(phi, -2.0);
  const CubicModel m{2.0, 0.0, 1.0};
  EXPECT_DOUBLE_EQ(m.derivative(phi), 0.0);
  EXPECT_DOUBLE_EQ(m.minimizer(), phi);
}

TEST(Phi, PropertiesOverRandomModels) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> dd(-5.0, 5.0);
  std::uniform_real_distribution<double> hh(0.0, 5.0);
  std::uniform_real_distribution<double> mm(0.05, 5.0);
  for (int i = 0; i < 1000; ++i) {
    const double d = dd(rng), h = hh(rng), M = mm(rng);
    const double phi = cars::cubic_minimizer_phi(d, h, M);
    const CubicModel cm{d, h, M};
    // Global minimality against a dense grid around the minimizer.
    const double span = std::abs(phi) + 2.0;
    EXPECT_GE(grid_min(d, h, M, -span, span, span / 2000.0) - cm.value(phi), -1e-9);
    if (d != 0.0) EXPECT_EQ(std::signbit(phi), !std::signbit(d));
    // (M/2)|phi| phi = -d - h phi.
    const double lhs = 0.5 * M * std::abs(phi) * phi;
    const double rhs = -d - h * phi;
    EXPECT_NEAR(lhs, rhs, 1e-9 * std::max(1.0, std::abs(rhs)));
    if (h > 0.0) {
      const double L = cars::adaptive_L_hat(d, h, M);
      EXPECT_GE(L, 1.0);
      EXPECT_NEAR(-d / (L * h), phi, 1e-10 * std::abs(phi));
    }
  }
}

TEST(AdaptiveL, PureNewtonWhenSlopeVanishes) {
  EXPECT_EQ(cars::adaptive_L_hat(0.0, 3.0, 2.0), 1.0);
  EXPECT_GT(cars::adaptive_L_hat(1e-6, 3.0, 2.0), 1.0);
}

TEST(AdaptiveL, WorkedExample) {
  const double L = cars::adaptive_L_hat(2.0, 1.0, 2.0);
  EXPECT_DOUBLE_EQ(L, 2.0);
  EXPECT_DOUBLE_EQ(-2.0 / (L * 1.0), -1.0);
  EXPECT_DOUBLE_EQ(cars::cubic_minimizer_phi(2.0, 1.0, 2.0), -1.0);
}

TEST(AdaptiveL, Errors) {
  try {
    cars::adaptive_L_hat(1.0, 0.0, 2.0);
    FAIL();
  } catch (const cars::Error& e) {
    EXPECT_EQ(e.code(), cars::ErrorCode::kZeroCurvature);
  }
  EXPECT_THROW(cars::adaptive_L_hat(1.0, -1.0, 2.0), cars::Error);
  EXPECT_THROW(cars::adaptive_L_hat(1.0, 1.0, 0.0), cars::Error);
}

TEST(Schedule, RadiusNeverExceedsR) {
  CubicRadiusSchedule s;
  s.epsilon = 1e6;  // large enough that the first term exceeds R early on
  s.R = 0.3;
  for (std::uint64_t k = 0; k < 10000; k += 7) EXPECT_LE(cars::cubic_radius(s, 1.0, k), s.R);
  EXPECT_DOUBLE_EQ(cars::cubic_radius(s, 1.0, 0), 0.3);
  CubicRadiusSchedule t;
  t.epsilon = 1e-4;
  t.R = 2.0;
  // rho = 2 / sqrt(8) = 1/sqrt(2); r_2 = rho * 1e-2 / 2.
  EXPECT_NEAR(cars::cubic_radius(t, 4.0, 2), 0.01 / (2.0 * std::sqrt(2.0)), 1e-16);
}

TEST(Schedule, EstimateB) {
  CubicRadiusSchedule s;
  s.R = 2.0;
  EXPECT_DOUBLE_EQ(cars::estimate_B(s, 2.0, 10.0, std::nullopt), 16.0);
  EXPECT_DOUBLE_EQ(cars::estimate_B(s, 2.0, 100.0, 1.0), 99.0);
  s.L_estimate = 50.0;
  EXPECT_DOUBLE_EQ(cars::estimate_B(s, 2.0, 100.0, 1.0), 200.0);
  s.f_star_estimate = -500.0;
  EXPECT_DOUBLE_EQ(cars::estimate_B(s, 2.0, 100.0, 1.0), 600.0);
  s.B = 3.0;
  EXPECT_DOUBLE_EQ(cars::estimate_B(s, 2.0, 100.0, 1.0), 3.0);
}

TEST(Config, Validation) {
  CarsCrConfig ok;
  EXPECT_NO_THROW(ok.validate());
  CarsCrConfig bad;
  bad.M = -1.0;
  EXPECT_THROW(bad.validate(), cars::Error);
  CarsCrConfig bad_schedule;
  CubicRadiusSchedule s;
  s.R = 0.0;
  bad_schedule.radius = s;
  EXPECT_THROW(bad_schedule.validate(), cars::Error);
}

TEST(Step, NearlyPureNewtonOnQuadratic) {
  cars::Objective f{1, [](const Vector& x) { return 0.5 * x[0] * x[0]; }};
  CountingOracle oracle(f);
  SolverState s{0, Vector::Constant(1, 4.0), 8.0};
  CarsCrConfig config;
  config.M = 1e-12;
  cars::SamplerSpec spec{DirectionKind::kFixed};
  spec.fixed = Vector::Constant(1, 1.0);
  DirectionSampler sampler(spec, 1, 0);
  const auto rep = cars::cr_step(s, config, {}, sampler, oracle);
  EXPECT_NEAR(rep.step_scale, 1.0, 1e-9);
  EXPECT_EQ(rep.queries, 4u);
  EXPECT_EQ(rep.candidate_values.size(), 5u);
  EXPECT_LT(rep.chosen, 2u);
  EXPECT_NEAR(s.x[0], 0.0, 1e-9);
}

TEST(Step, DirectionIsNormalized) {
  cars::Objective f{2, [](const Vector& x) { return x.squaredNorm(); }};
  CountingOracle oracle(f);
  SolverState s{0, Vector::Ones(2), 2.0};
  CarsCrConfig config;
  cars::SamplerSpec spec{DirectionKind::kFixed};
  spec.fixed = Vector::Constant(2, 50.0);
  DirectionSampler sampler(spec, 2, 0);
  const auto rep = cars::cr_step(s, config, {}, sampler, oracle);
  EXPECT_DOUBLE_EQ(rep.radius, 0.25);
  // Probes sit at x +- r u with unit u.
  const Vector probe = Vector::Ones(2) + 0.25 * Vector::Constant(2, 1.0 / std::sqrt(2.0));
  EXPECT_NEAR(rep.candidate_values[4], f.eval(probe), 1e-14);
}

TEST(Run, ConvexQuarticKeepsCurvatureNonnegativeAndCountsFour) {
  const cars::Problem p = cars::make_quartic(30, 0.1, 0.01, 1);
  const auto spec = cars::make_solver("cars-cr");
  cars::StopCriteria stop;
  stop.max_queries = 1 + 4 * 2500;
  stop.run_to_budget = true;
  std::size_t iterations = 0;
  const auto rec = cars::run_solver(p, spec, 3, stop, [&](const cars::IterationReport& rep) {
    ++iterations;
    EXPECT_GE(rep.h_r, 0.0);
    EXPECT_EQ(rep.queries, 4u);
    EXPECT_LE(rep.f_after, rep.f_before);
  });
  EXPECT_EQ(iterations, 2500u);
  EXPECT_EQ(rec.queries_used, 1u + 4 * 2500);
}

TEST(Run, HundredIterationsExactAccounting) {
  const cars::Problem p = cars::lookup("helical-valley");
  CarsCrConfig config;
  CountingOracle oracle(p.objective, 401);
  DirectionSampler sampler({DirectionKind::kSphereUniform, 1, true}, p.dim, 4);
  cars::StopCriteria stop;
  stop.max_queries = 401;
  stop.run_to_budget = true;
  std::vector<std::uint64_t> counts;
  cars::run_cars_cr(p, config, sampler, oracle, stop,
                    [&](const cars::IterationReport&) { counts.push_back(oracle.count()); });
  ASSERT_EQ(counts.size(), 100u);
  for (std::size_t i = 0; i < counts.size(); ++i) EXPECT_EQ(counts[i], 1 + 4 * (i + 1));
}

TEST(Run, TheoryScheduleStaysWithinR) {
  const cars::Problem p = cars::lookup("rosenbrock");
  const auto spec = cars::make_solver("cars-cr", {{"epsilon", "1e-4"}, {"R", "0.5"}});
  cars::StopCriteria stop;
  stop.max_queries = 4001;
  stop.run_to_budget = true;
  cars::run_solver(p, spec, 1, stop, [&](const cars::IterationReport& rep) {
    EXPECT_LE(rep.radius, 0.5);
    EXPECT_GT(rep.radius, 0.0);
    EXPECT_LE(rep.f_after, rep.f_before);
  });
}

TEST(Run, SublinearTrendOnQuartic) {
  const cars::Problem p = cars::make_quartic(30, 0.1, 0.01, 1);
  const auto spec = cars::make_solver("cars-cr");
  const std::vector<std::uint64_t> checkpoints{100, 1000, 10000};
  std::vector<std::vector<double>> scaled(checkpoints.size());
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    cars::StopCriteria stop;
    stop.max_queries = 1 + 4 * checkpoints.back();
    stop.run_to_budget = true;
    cars::run_solver(p, spec, seed, stop, [&](const cars::IterationReport& rep) {
      const std::uint64_t k = rep.k + 1;
      for (std::size_t j = 0; j < checkpoints.size(); ++j) {
        if (k == checkpoints[j]) scaled[j].push_back(double(k) * rep.f_after);
      }
    });
  }
  std::vector<double> medians;
  for (auto& v : scaled) {
    ASSERT_EQ(v.size(), 5u);
    std::sort(v.begin(), v.end());
    medians.push_back(v[2]);
  }
  for (double m : medians) EXPECT_LE(m, 10.0 * medians.front());
}
