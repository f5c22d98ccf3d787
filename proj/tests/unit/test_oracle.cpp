#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "cars/error.hpp"
#include "cars/oracle.hpp"

using cars::CountingOracle;
using cars::ErrorCode;
using cars::Objective;
using cars::Vector;

namespace {

Objective squared_norm(std::size_t d) {
  return {d, [](const Vector& x) { return x.squaredNorm(); }};
}

Vector vec(std::initializer_list<double> v) {
  Vector out(v.size());
  std::size_t i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const cars::Error& e) {
    return e.code();
  }
  return ErrorCode{};
}

}  // namespace

TEST(Oracle, EvaluatesAndCounts) {
  CountingOracle oracle(squared_norm(2));
  EXPECT_EQ(oracle.count(), 0u);
  EXPECT_EQ(oracle.evaluate(vec({3, 4})), 25.0);
  EXPECT_EQ(oracle.count(), 1u);
}

TEST(Oracle, RepeatedPointSameValueCountsTwice) {
  CountingOracle oracle(squared_norm(3));
  const Vector x = vec({1, -2, 0.5});
  const double a = oracle.evaluate(x);
  const double b = oracle.evaluate(x);
  EXPECT_EQ(a, b);
  EXPECT_EQ(oracle.count(), 2u);
}

TEST(Oracle, BudgetExhausted) {
  CountingOracle oracle(squared_norm(1), 1);
  oracle.evaluate(vec({1}));
  EXPECT_EQ(code_of([&] { oracle.evaluate(vec({2})); }), ErrorCode::kBudgetExhausted);
  EXPECT_EQ(oracle.count(), 1u);
  EXPECT_EQ(oracle.remaining(), 0u);
}

TEST(Oracle, DimensionMismatch) {
  CountingOracle oracle(squared_norm(2));
  EXPECT_EQ(code_of([&] { oracle.evaluate(vec({1, 2, 3})); }), ErrorCode::kDimensionMismatch);
  EXPECT_EQ(oracle.count(), 0u);
}

TEST(Oracle, BestSeenBeforeAnyQuery) {
  CountingOracle oracle(squared_norm(1));
  EXPECT_EQ(code_of([&] { oracle.best_seen(); }), ErrorCode::kNoQueriesYet);
}

TEST(Oracle, BestSeenTracksMinimum) {
  {
    CountingOracle oracle(squared_norm(1));
    oracle.evaluate(vec({2}));
    oracle.evaluate(vec({1}));
    const auto [x, f] = oracle.best_seen();
    EXPECT_EQ(x[0], 1.0);
    EXPECT_EQ(f, 1.0);
  }
  {
    CountingOracle oracle(squared_norm(1));
    oracle.evaluate(vec({1.5}));
    const auto [x, f] = oracle.best_seen();
    EXPECT_EQ(x[0], 1.5);
    EXPECT_EQ(f, 2.25);
  }
  {
    CountingOracle oracle(squared_norm(1));
    oracle.evaluate(vec({1}));
    oracle.evaluate(vec({2}));
    const auto [x, f] = oracle.best_seen();
    EXPECT_EQ(x[0], 1.0);
    EXPECT_EQ(f, 1.0);
  }
}

TEST(Oracle, TiesKeepEarliestPoint) {
  CountingOracle oracle(squared_norm(1));
  oracle.evaluate(vec({-1}));
  oracle.evaluate(vec({1}));
  EXPECT_EQ(oracle.best_seen().first[0], -1.0);
}

TEST(Oracle, NonFiniteValuesAreCountedAndRankedWorst) {
  int calls = 0;
  Objective f{1, [&](const Vector& x) {
                ++calls;
                return x[0] < 0 ? std::numeric_limits<double>::quiet_NaN() : x[0];
              }};
  CountingOracle oracle(f);
  EXPECT_TRUE(std::isnan(oracle.evaluate(vec({-1}))));
  EXPECT_EQ(oracle.evaluate(vec({5})), 5.0);
  EXPECT_TRUE(std::isnan(oracle.evaluate(vec({-2}))));
  EXPECT_EQ(oracle.count(), 3u);
  EXPECT_EQ(calls, 3);
  EXPECT_EQ(oracle.best_value(), 5.0);
}

TEST(Oracle, IsBetterOrdering) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double inf = std::numeric_limits<double>::infinity();
  EXPECT_TRUE(cars::is_better(1.0, 2.0));
  EXPECT_FALSE(cars::is_better(2.0, 2.0));
  EXPECT_TRUE(cars::is_better(1e300, inf));
  EXPECT_TRUE(cars::is_better(1e300, -inf));
  EXPECT_TRUE(cars::is_better(0.0, nan));
  EXPECT_FALSE(cars::is_better(nan, 0.0));
  EXPECT_FALSE(cars::is_better(-inf, nan));
  EXPECT_FALSE(cars::is_better(nan, inf));
}

TEST(Oracle, LimitBudgetOnlyTightens) {
  CountingOracle oracle(squared_norm(1), 10);
  oracle.limit_budget(20);
  EXPECT_EQ(oracle.budget(), 10u);
  oracle.limit_budget(3);
  EXPECT_EQ(oracle.budget(), 3u);
  CountingOracle unlimited(squared_norm(1));
  EXPECT_EQ(unlimited.remaining(), std::numeric_limits<std::uint64_t>::max());
  unlimited.limit_budget(4);
  EXPECT_EQ(unlimited.remaining(), 4u);
  EXPECT_TRUE(unlimited.has_remaining(4));
  EXPECT_FALSE(unlimited.has_remaining(5));
}

TEST(Oracle, ObserverSeesEveryQuery) {
  CountingOracle oracle(squared_norm(1));
  std::vector<std::pair<std::uint64_t, double>> seen;
  oracle.set_observer([&](std::uint64_t c, double v) { seen.emplace_back(c, v); });
  oracle.evaluate(vec({2}));
  oracle.evaluate(vec({3}));
  ASSERT_EQ(seen.size(), 2u);
  EXPECT_EQ(seen[0], std::make_pair(std::uint64_t{1}, 4.0));
  EXPECT_EQ(seen[1], std::make_pair(std::uint64_t{2}, 9.0));
}

TEST(OracleProperty, CountAndBestOverRandomSequences) {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t d = 1 + trial % 5;
    int objective_calls = 0;
    Objective f{d, [&](const Vector& x) {
                  ++objective_calls;
                  return std::sin(x.sum()) + x.squaredNorm();
                }};
    CountingOracle oracle(f);
    const std::size_t n = 1 + trial * 3;
    double min_seen = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      Vector x(d);
      for (auto& v : x) v = normal(rng);
      const double value = oracle.evaluate(x);
      min_seen = std::min(min_seen, value);
      EXPECT_LE(oracle.best_value(), value);
    }
    EXPECT_EQ(oracle.count(), n);
    EXPECT_EQ(oracle.best_value(), min_seen);
    const auto [x_best, f_best] = oracle.best_seen();
    EXPECT_EQ(oracle.objective().eval(x_best), f_best);
    EXPECT_EQ(oracle.objective().dim, d);
  }
}
