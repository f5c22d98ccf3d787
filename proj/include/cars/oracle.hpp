#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <utility>

#include "cars/error.hpp"
#include "cars/linalg.hpp"

namespace cars {

// A deterministic black-box objective on R^dim.
struct Objective {
  std::size_t dim = 0;
  std::function<double(const Vector&)> eval;
};

// Strict "a is better than b" for argmin selections. Non-finite values (NaN,
// +inf, -inf) rank below every finite value; two non-finite values never beat
// each other.
inline bool is_better(double a, double b) noexcept {
  const bool fa = std::isfinite(a);
  const bool fb = std::isfinite(b);
  if (fa && fb) return a < b;
  return fa && !fb;
}

// Single gateway for every function evaluation of a run. Counts queries,
// enforces the budget and keeps the best point seen so far (earliest wins on
// ties). Not thread-safe; one oracle belongs to one run.
class CountingOracle {
 public:
  // Called after every served query with the new count and returned value.
  using Observer = std::function<void(std::uint64_t count, double value)>;

  explicit CountingOracle(Objective objective,
                          std::optional<std::uint64_t> budget = std::nullopt);

  // Throws kDimensionMismatch or kBudgetExhausted. Non-finite values are
  // returned and counted like any other.
  double evaluate(const Vector& x);

  // Throws kNoQueriesYet before the first evaluation.
  std::pair<Vector, double> best_seen() const;
  double best_value() const;

  std::size_t dim() const noexcept { return objective_.dim; }
  std::uint64_t count() const noexcept { return count_; }
  std::optional<std::uint64_t> budget() const noexcept { return budget_; }
  // Queries still available; UINT64_MAX when unlimited.
  std::uint64_t remaining() const noexcept;
  bool has_remaining(std::uint64_t n) const noexcept { return remaining() >= n; }

  const Objective& objective() const noexcept { return objective_; }

  void set_observer(Observer observer) { observer_ = std::move(observer); }

  // Tightens the budget to at most `limit` total queries; never loosens it.
  void limit_budget(std::uint64_t limit) noexcept;

 private:
  Objective objective_;
  std::optional<std::uint64_t> budget_;
  std::uint64_t count_ = 0;
  Vector best_point_;
  double best_value_ = 0.0;
  Observer observer_;
};

}  // namespace cars
