#include "cars/oracle.hpp"

#include <limits>
#include <string>

namespace cars {

CountingOracle::CountingOracle(Objective objective,
                               std::optional<std::uint64_t> budget)
    : objective_(std::move(objective)), budget_(budget) {
  if (objective_.dim == 0 || !objective_.eval) {
    throw Error(ErrorCode::kInvalidConfig, "objective needs dim >= 1 and eval");
  }
  if (budget_ && *budget_ == 0) {
    throw Error(ErrorCode::kInvalidConfig, "budget must be positive");
  }
}

double CountingOracle::evaluate(const Vector& x) {
  if (static_cast<std::size_t>(x.size()) != objective_.dim) {
    throw Error(ErrorCode::kDimensionMismatch,
                "point has length " + std::to_string(x.size()) +
                    ", objective expects " + std::to_string(objective_.dim));
  }
  if (budget_ && count_ >= *budget_) {
    throw Error(ErrorCode::kBudgetExhausted,
                "query budget of " + std::to_string(*budget_) + " exhausted");
  }
  const double value = objective_.eval(x);
  ++count_;
  if (count_ == 1 || is_better(value, best_value_)) {
    best_point_ = x;
    best_value_ = value;
  }
  if (observer_) observer_(count_, value);
  return value;
}

std::pair<Vector, double> CountingOracle::best_seen() const {
  if (count_ == 0) {
    throw Error(ErrorCode::kNoQueriesYet, "no queries served yet");
  }
  return {best_point_, best_value_};
}

double CountingOracle::best_value() const { return best_seen().second; }

std::uint64_t CountingOracle::remaining() const noexcept {
  if (!budget_) return std::numeric_limits<std::uint64_t>::max();
  return *budget_ > count_ ? *budget_ - count_ : 0;
}

void CountingOracle::limit_budget(std::uint64_t limit) noexcept {
  if (!budget_ || limit < *budget_) budget_ = limit;
}

}  // namespace cars
