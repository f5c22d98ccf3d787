// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits nonzero if any criterion fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cars/bench.hpp"
#include "cars/cars.hpp"
#include "cars/cars_cr.hpp"
#include "cars/problems.hpp"
#include "cars/sampling.hpp"
#include "cars/solvers.hpp"

namespace {

using cars::Matrix;
using cars::Vector;
using Clock = std::chrono::steady_clock;

// Tolerances and limits.
constexpr double kNewtonRelTol = 1e-9;
constexpr double kPhiAbsTol = 1e-8;
constexpr double kLhatRelTol = 1e-10;
constexpr double kScaleRelTol = 1e-12;
constexpr double kPGammaLimit = 0.3156;
constexpr double kMinRSquared = 0.95;
constexpr double kNewtonEtaTol = 1e-12;
constexpr double kQuarticEps = 1e-6;
constexpr std::uint64_t kQuarticBudget = 100000;
constexpr std::size_t kMinQuarticSolved = 9;
constexpr double kDominanceTau = 4.0;
constexpr double kSigmas = 3.0;

struct Outcome {
  bool pass = true;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), f, a);
  return buf;
}

cars::StopCriteria to_budget(std::uint64_t budget) {
  cars::StopCriteria stop;
  stop.max_queries = budget;
  stop.run_to_budget = true;
  stop.keep_trace = false;
  return stop;
}

Outcome query_accounting() {
  const auto t0 = Clock::now();
  const cars::Problem problem = cars::lookup("quartic-d30");
  constexpr std::uint64_t kIters = 1000;
  Outcome out;

  auto check = [&](const char* name, std::uint64_t per_iter, auto&& run) {
    std::uint64_t iterations = 0;
    bool exact = true;
    cars::CountingOracle oracle(problem.objective, 1 + per_iter * kIters);
    run(oracle, [&](const cars::IterationReport& rep) {
      ++iterations;
      exact = exact && rep.queries == per_iter;
    });
    const bool ok = exact && iterations == kIters && oracle.count() == 1 + per_iter * kIters;
    out.pass = out.pass && ok;
    out.detail += std::string(name) + ": " + std::to_string(iterations) + " iters, " +
                  std::to_string(oracle.count()) + " queries; ";
  };

  check("cars", 3, [&](cars::CountingOracle& oracle, const cars::IterationCallback& cb) {
    cars::CarsConfig config;
    cars::DirectionSampler sampler(config.sampler, problem.dim, 7);
    cars::run_cars(problem, config, sampler, oracle, to_budget(1 + 3 * kIters), cb);
  });
  check("cars-cr", 4, [&](cars::CountingOracle& oracle, const cars::IterationCallback& cb) {
    cars::CarsCrConfig config;
    cars::DirectionSampler sampler(config.sampler, problem.dim, 7);
    cars::run_cars_cr(problem, config, sampler, oracle, to_budget(1 + 4 * kIters), cb);
  });

  const double elapsed = seconds_since(t0);
  out.pass = out.pass && elapsed < 1.0;
  out.detail += fmt("%.3f s", elapsed);
  return out;
}

Outcome monotonicity() {
  const auto t0 = Clock::now();
  const auto seeds = cars::seeds_from_master(2024, 10);
  std::size_t violations = 0;
  std::size_t iterations = 0;
  for (const cars::Problem& problem : cars::mgh_suite()) {
    for (const char* solver : {"cars", "cars-cr"}) {
      const cars::SolverSpec spec = cars::make_solver(solver);
      for (std::uint64_t seed : seeds) {
        double previous = std::numeric_limits<double>::quiet_NaN();
        cars::run_solver(problem, spec, seed, to_budget(20000),
                         [&](const cars::IterationReport& rep) {
                           ++iterations;
                           const bool chained = std::isnan(previous) || rep.f_before == previous;
                           const bool descent =
                               std::isfinite(rep.f_after) && rep.f_after <= rep.f_before;
                           if (!chained || !descent) ++violations;
                           previous = rep.f_after;
                         });
      }
    }
  }
  const double elapsed = seconds_since(t0);
  Outcome out;
  out.pass = violations == 0 && elapsed < 60.0;
  out.detail = std::to_string(violations) + " violations over " + std::to_string(iterations) +
               " iterations; " + fmt("%.2f s", elapsed);
  return out;
}

// Newton step along u from the iterate, for f(y) = y^T A y / 2 + b^T y in
// coordinates centred at the iterate. Evaluated in extended precision so the
// oracle's own rounding stays at the level of one double rounding.
Outcome newton_exactness() {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  std::size_t cases = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t d = 1 + trial % 20;
    Matrix G(d, d);
    for (Eigen::Index i = 0; i < G.size(); ++i) G.data()[i] = normal(rng);
    const Matrix A = G.transpose() * G + Matrix::Identity(d, d);
    Vector b(d);
    for (auto& v : b) v = normal(rng);
    cars::Objective obj{d, [A, b](const Vector& y) {
                          long double quad = 0.0L;
                          long double lin = 0.0L;
                          for (Eigen::Index i = 0; i < y.size(); ++i) {
                            long double row = 0.0L;
                            for (Eigen::Index j = 0; j < y.size(); ++j) {
                              row += static_cast<long double>(A(i, j)) * y[j];
                            }
                            quad += row * y[i];
                            lin += static_cast<long double>(b[i]) * y[i];
                          }
                          return static_cast<double>(0.5L * quad + lin);
                        }};
    Vector u(d);
    for (auto& v : u) v = normal(rng);
    u.normalize();
    const double exact_step = -u.dot(b) / u.dot(A * u);

    std::vector<double> radii{1e-6, 1.0};
    for (int j = 0; j < 8; ++j) radii.push_back(std::pow(10.0, -6.0 * unit(rng)));
    for (double r : radii) {
      cars::CountingOracle oracle(obj);
      const Vector x = Vector::Zero(d);
      const double fx = oracle.evaluate(x);
      const auto fd = cars::central_differences(oracle, x, fx, u, r);
      const Vector cand = cars::cars_candidate(x, u, fd.d_r, fd.h_r, 1.0);
      const Vector exact = x + exact_step * u;
      const double rel = (cand - exact).norm() / exact.norm();
      worst = std::max(worst, rel);
      ++cases;
    }
  }
  Outcome out;
  out.pass = worst <= kNewtonRelTol;
  out.detail = std::to_string(cases) + " cases, worst relative error " + fmt("%.3e", worst);
  return out;
}

long double cubic_model(long double d, long double h, long double M, long double a) {
  return d * a + h * a * a / 2.0L + M * std::fabs(a) * a * a / 6.0L;
}

long double golden_section(long double d, long double h, long double M) {
  const long double half_width = 2.0L * std::sqrt(2.0L * std::fabs(d) / M) + 1.0L;
  long double lo = -half_width;
  long double hi = half_width;
  const long double inv_phi = (std::sqrt(5.0L) - 1.0L) / 2.0L;
  long double x1 = hi - inv_phi * (hi - lo);
  long double x2 = lo + inv_phi * (hi - lo);
  long double f1 = cubic_model(d, h, M, x1);
  long double f2 = cubic_model(d, h, M, x2);
  for (int it = 0; it < 200 && hi - lo > 1e-15L; ++it) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = cubic_model(d, h, M, x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = cubic_model(d, h, M, x2);
    }
  }
  return (lo + hi) / 2.0L;
}

Outcome phi_equivalence() {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> dist_d(-10.0, 10.0);
  std::uniform_real_distribution<double> dist_h(0.0, 10.0);
  std::uniform_real_distribution<double> dist_logM(-2.0, 2.0);
  double worst_abs = 0.0;
  double worst_rel = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double d = dist_d(rng);
    const double h = dist_h(rng);
    const double M = std::pow(10.0, dist_logM(rng));
    const double phi = cars::cubic_minimizer_phi(d, h, M);
    const double reference = static_cast<double>(golden_section(d, h, M));
    worst_abs = std::max(worst_abs, std::abs(phi - reference));
    if (h > 0.0) {
      const double via_L = -d / (cars::adaptive_L_hat(d, h, M) * h);
      worst_rel = std::max(worst_rel, std::abs(via_L - phi) / std::abs(phi));
    }
  }
  Outcome out;
  out.pass = worst_abs <= kPhiAbsTol && worst_rel <= kLhatRelTol;
  out.detail = "max |phi - golden| " + fmt("%.3e", worst_abs) + ", max rel L-form " +
               fmt("%.3e", worst_rel);
  return out;
}

// f(x) = x^3: f'' = 6x is Lipschitz with constant sup|f'''| = 6 on any interval.
Outcome difference_bounds() {
  cars::Objective cube{1, [](const Vector& x) { return x[0] * x[0] * x[0]; }};
  const double eps = std::numeric_limits<double>::epsilon();
  std::size_t violations = 0;
  std::size_t cases = 0;
  for (double r : {1e-3, 1e-2, 1e-1}) {
    for (double x0 : {-2.0, -1.0, -0.3, 0.0, 0.5, 1.0, 1.7, 3.0}) {
      for (double scale : {0.25, 1.0, 4.0}) {
        for (double sign : {-1.0, 1.0}) {
          const Vector x = Vector::Constant(1, x0);
          const Vector u = Vector::Constant(1, sign * scale);
          const double unorm = scale;
          // Hessian Lipschitz constant measured on [x - r|u|, x + r|u|].
          const double lo = x0 - r * unorm;
          const double hi = x0 + r * unorm;
          double L1 = 0.0;
          for (int j = 1; j <= 16; ++j) {
            const double y = lo + (hi - lo) * j / 16.0;
            L1 = std::max(L1, std::abs(6.0 * y - 6.0 * lo) / (y - lo));
          }
          cars::CountingOracle oracle(cube);
          const double fx = oracle.evaluate(x);
          const auto fd = cars::central_differences(oracle, x, fx, u, r);
          const double g = 3.0 * x0 * x0 * u[0];
          const double H = 6.0 * x0 * u[0] * u[0];
          const double magnitude = std::abs(fd.f_plus) + std::abs(fd.f_minus) + 2.0 * std::abs(fx);
          const double round_d = 4.0 * eps * magnitude / (2.0 * r);
          const double round_h = 4.0 * eps * magnitude / (r * r);
          const double bound_d = cars::first_difference_error_bound(r, unorm, 1.0, L1);
          const double bound_h = cars::second_difference_error_bound(r, unorm, 1.0, L1);
          if (std::abs(fd.d_r - g) > bound_d + round_d) ++violations;
          if (std::abs(fd.h_r - H) > bound_h + round_h) ++violations;
          cases += 2;
        }
      }
    }
  }
  Outcome out;
  out.pass = violations == 0;
  out.detail = std::to_string(violations) + " violations in " + std::to_string(cases) + " checks";
  return out;
}

Outcome scale_invariance() {
  const cars::HolderConstants worked{1.0, 3.0, 1.0, 1e-4, 1.0};
  const double C_worked = cars::radius_limit_C(worked);
  double worst = 0.0;
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unit(0.05, 1.0);
  std::uniform_real_distribution<double> logv(-3.0, 3.0);
  std::vector<cars::HolderConstants> cases{worked};
  for (int i = 0; i < 200; ++i) {
    cases.push_back({unit(rng), std::pow(10.0, logv(rng)), std::pow(10.0, logv(rng)),
                     std::pow(10.0, logv(rng) - 3.0), unit(rng)});
  }
  for (const auto& hc : cases) {
    const double base = cars::radius_limit_C(hc);
    for (double lambda : {1e-3, 1e3}) {
      cars::HolderConstants scaled = hc;
      scaled.mu *= lambda;
      scaled.L_a *= lambda;
      scaled.epsilon *= lambda;
      worst = std::max(worst, std::abs(cars::radius_limit_C(scaled) - base) / base);
    }
  }
  Outcome out;
  out.pass = C_worked == 0.1 && worst <= kScaleRelTol;
  out.detail = "worked C = " + fmt("%.17g", C_worked) + ", max rel change " + fmt("%.3e", worst);
  return out;
}

Outcome p_gamma_monte_carlo() {
  constexpr std::size_t n = 100000;
  Outcome out;
  std::uint64_t seed = 100;
  for (auto kind : {cars::DirectionKind::kSphereUniform, cars::DirectionKind::kGaussian}) {
    for (std::size_t d : {2, 10, 100}) {
      cars::DirectionSampler sampler({kind}, d, ++seed);
      Vector g = Vector::Zero(d);
      g[0] = 1.0;
      g[d - 1] += 0.5;
      const auto est = cars::estimate_p_gamma(sampler, g, 1.0 / std::sqrt(double(d)), n);
      const bool ok = est.mean >= kPGammaLimit - kSigmas * est.std_error;
      out.pass = out.pass && ok;
      out.detail += std::string(cars::to_string(kind)) + " d=" + std::to_string(d) + ": " +
                    fmt("%.4f", est.mean) + (ok ? "; " : " (low); ");
    }
    cars::DirectionSampler sampler({kind}, 2, ++seed);
    const Vector g = Vector::Constant(2, 1.0);
    const auto est = cars::estimate_p_gamma(sampler, g, 1.0 / std::sqrt(2.0), n);
    const bool ok = std::abs(est.mean - 0.5) <= kSigmas * est.std_error;
    out.pass = out.pass && ok;
    out.detail += std::string("d=2 half: ") + fmt("%.4f", est.mean) + (ok ? "; " : " (off); ");
  }
  return out;
}

Outcome eta_monte_carlo() {
  constexpr std::size_t d = 8;
  constexpr std::size_t n = 100000;
  constexpr double mu = 1.0;
  constexpr double L = 20.0;
  std::mt19937_64 rng(9);
  std::normal_distribution<double> normal;
  Matrix G(d, d);
  for (Eigen::Index i = 0; i < G.size(); ++i) G.data()[i] = normal(rng);
  const Matrix Q = Eigen::HouseholderQR<Matrix>(G).householderQ();
  Vector lambda(d);
  for (std::size_t i = 0; i < d; ++i) lambda[i] = mu + (L - mu) * double(i) / double(d - 1);
  const Matrix H = Q * lambda.asDiagonal() * Q.transpose();
  Vector g(d);
  for (auto& v : g) v = normal(rng);

  Outcome out;
  const double floor = mu / (double(d) * L);
  std::uint64_t seed = 40;
  for (auto kind : {cars::DirectionKind::kSphereUniform, cars::DirectionKind::kGaussian,
                    cars::DirectionKind::kCoordinateUniform, cars::DirectionKind::kRademacher}) {
    cars::DirectionSampler sampler({kind}, d, ++seed);
    const auto est = cars::estimate_eta(sampler, g, H, n);
    const bool ok = est.mean >= floor - kSigmas * est.std_error && est.mean <= 1.0;
    out.pass = out.pass && ok;
    out.detail += std::string(cars::to_string(kind)) + " " + fmt("%.4f", est.mean) + "; ";
  }
  cars::SamplerSpec newton{cars::DirectionKind::kFixed};
  newton.fixed = H.llt().solve(g);
  cars::DirectionSampler sampler(newton, d, 1);
  const auto est = cars::estimate_eta(sampler, g, H, 1000);
  const bool ok = std::abs(est.mean - 1.0) <= kNewtonEtaTol;
  out.pass = out.pass && ok;
  out.detail += "newton " + fmt("%.15f", est.mean) + fmt(" (floor %.4f)", floor);
  return out;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

Outcome linear_rate() {
  const auto t0 = Clock::now();
  const cars::Problem problem = cars::make_quadratic(10, 10.0, cars::kDefaultInstanceSeed);
  const std::vector<double> eps{1e-2, 1e-4, 1e-6};
  cars::SolverSpec spec = cars::make_solver("cars", {{"L_hat", "1"}, {"sampler", "sphere"}});
  cars::StopCriteria stop;
  stop.max_queries = 200000;
  stop.eps = eps;
  stop.keep_trace = false;
  std::vector<std::vector<double>> counts(eps.size());
  bool all_solved = true;
  for (std::uint64_t seed : cars::seeds_from_master(77, 20)) {
    const cars::RunRecord rec = cars::run_solver(problem, spec, seed, stop);
    for (const auto& t : rec.targets) {
      const std::size_t j = std::find(eps.begin(), eps.end(), t.eps) - eps.begin();
      all_solved = all_solved && t.queries.has_value();
      counts[j].push_back(t.queries ? double(*t.queries) : double(stop.max_queries));
    }
  }
  std::vector<double> xs, ys;
  for (std::size_t j = 0; j < eps.size(); ++j) {
    xs.push_back(std::log(1.0 / eps[j]));
    ys.push_back(median(counts[j]));
  }
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / ys.size();
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t j = 0; j < xs.size(); ++j) {
    sxy += (xs[j] - mx) * (ys[j] - my);
    sxx += (xs[j] - mx) * (xs[j] - mx);
    syy += (ys[j] - my) * (ys[j] - my);
  }
  const double slope = sxy / sxx;
  const double r2 = syy > 0.0 ? sxy * sxy / (sxx * syy) : 0.0;
  const double elapsed = seconds_since(t0);
  Outcome out;
  out.pass = all_solved && slope > 0.0 && r2 >= kMinRSquared && elapsed < 10.0;
  out.detail = "medians " + fmt("%.0f", ys[0]) + "/" + fmt("%.0f", ys[1]) + "/" +
               fmt("%.0f", ys[2]) + ", R^2 " + fmt("%.4f", r2) + ", " + fmt("%.2f s", elapsed);
  return out;
}

Outcome quartic_run() {
  const auto t0 = Clock::now();
  const cars::Problem problem = cars::make_quartic(30, 0.1, 0.01, cars::kDefaultInstanceSeed);
  cars::StopCriteria stop;
  stop.max_queries = kQuarticBudget;
  stop.eps = {kQuarticEps};
  stop.keep_trace = false;
  Outcome out;
  for (const char* solver : {"cars", "cars-cr"}) {
    const cars::SolverSpec spec = cars::make_solver(solver);
    std::size_t solved = 0;
    for (std::uint64_t seed : cars::seeds_from_master(0, 10)) {
      const cars::RunRecord rec = cars::run_solver(problem, spec, seed, stop);
      if (rec.targets.front().queries) ++solved;
    }
    out.pass = out.pass && solved >= kMinQuarticSolved;
    out.detail += std::string(solver) + " " + std::to_string(solved) + "/10; ";
  }
  const double elapsed = seconds_since(t0);
  out.pass = out.pass && elapsed < 60.0;
  out.detail += fmt("%.2f s", elapsed);
  return out;
}

Outcome profile_dominance() {
  const auto t0 = Clock::now();
  cars::GridSpec grid;
  grid.problems = cars::mgh_suite();
  for (const auto& name : cars::solver_names()) grid.solvers.push_back(cars::make_solver(name));
  grid.seeds = cars::seeds_from_master(0, 10);
  grid.budget = 20000;
  grid.eps = {1e-1, 1e-3};
  const std::vector<cars::RunRecord> records = cars::run_grid(grid);

  Outcome out;
  for (double eps : grid.eps) {
    const cars::RatioTable table = cars::performance_ratios(records, eps);
    const auto col = [&](const std::string& s) {
      return std::size_t(std::find(table.solvers.begin(), table.solvers.end(), s) -
                         table.solvers.begin());
    };
    const std::size_t ic = col("cars");
    const std::size_t is = col("stp");
    std::set<double> taus{kDominanceTau};
    for (const auto& row : table.ratio) {
      for (std::size_t s : {ic, is}) {
        if (row[s] >= kDominanceTau && row[s] < cars::kUnsolvedRatio) taus.insert(row[s]);
      }
    }
    const std::vector<double> grid_tau(taus.begin(), taus.end());
    const cars::ProfileTable prof = cars::performance_profile(table, grid_tau);
    std::size_t bad = 0;
    for (std::size_t j = 0; j < grid_tau.size(); ++j) {
      if (prof.rho[ic][j] < prof.rho[is][j]) ++bad;
    }
    out.pass = out.pass && bad == 0;
    out.detail += "eps " + fmt("%g", eps) + ": cars " + fmt("%.3f", prof.rho[ic].front()) +
                  "->" + fmt("%.3f", prof.rho[ic].back()) + " stp " +
                  fmt("%.3f", prof.rho[is].front()) + "->" + fmt("%.3f", prof.rho[is].back()) +
                  ", " + std::to_string(bad) + " tau violations; ";
  }
  const double elapsed = seconds_since(t0);
  out.pass = out.pass && elapsed < 600.0;
  out.detail += fmt("%.1f s", elapsed);
  return out;
}

Outcome profile_math() {
  const std::vector<std::string> solvers{"s1", "s2"};
  const cars::RatioTable table =
      cars::performance_ratios(solvers, {{100.0, 200.0}, {400.0, 100.0}});
  const std::vector<double> tau{1.0, 2.0, 4.0};
  const cars::ProfileTable prof = cars::performance_profile(table, tau);
  bool ok = prof.rho[0] == std::vector<double>{0.5, 0.5, 1.0} &&
            prof.rho[1][0] == 0.5 && prof.rho[1][1] == 1.0;

  const cars::RatioTable partial =
      cars::performance_ratios(solvers, {{100.0, std::nullopt}, {std::nullopt, std::nullopt}});
  ok = ok && partial.ratio[0][0] == 1.0 && partial.ratio[0][1] == cars::kUnsolvedRatio &&
       partial.ratio[1][0] == cars::kUnsolvedRatio && partial.ratio[1][1] == cars::kUnsolvedRatio;
  const std::vector<double> wide{1.0, 1e3, 1e19};
  const cars::ProfileTable p2 = cars::performance_profile(partial, wide);
  ok = ok && p2.rho[1] == std::vector<double>{0.0, 0.0, 0.0} &&
       p2.rho[0] == std::vector<double>{0.5, 0.5, 0.5};

  Outcome out;
  out.pass = ok;
  out.detail = "s1 {" + fmt("%g", prof.rho[0][0]) + "," + fmt("%g", prof.rho[0][1]) + "," +
               fmt("%g", prof.rho[0][2]) + "} s2 {" + fmt("%g", prof.rho[1][0]) + "," +
               fmt("%g", prof.rho[1][1]) + "}";
  return out;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"query accounting", query_accounting},
      {"monotone descent", monotonicity},
      {"newton exactness on quadratics", newton_exactness},
      {"cubic minimizer equivalence", phi_equivalence},
      {"finite-difference error bounds", difference_bounds},
      {"radius limit scale invariance", scale_invariance},
      {"alignment probability", p_gamma_monte_carlo},
      {"distribution quality", eta_monte_carlo},
      {"linear rate signature", linear_rate},
      {"quartic desk-scale run", quartic_run},
      {"profile dominance over stp", profile_dominance},
      {"profile arithmetic", profile_math},
  };
  int failures = 0;
  int index = 0;
  for (const auto& [name, check] : criteria) {
    ++index;
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("[%s] %2d %s: %s\n", o.pass ? "PASS" : "FAIL", index, name, o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  std::printf("%d/%d criteria passed\n", index - failures, index);
  return failures == 0 ? 0 : 1;
}
