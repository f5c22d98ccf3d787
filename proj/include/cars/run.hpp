#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cars/linalg.hpp"
#include "cars/oracle.hpp"

namespace cars {

// Iterate of any solver. fx caches f(x) so no solver re-queries it.
struct SolverState {
  std::uint64_t k = 0;
  Vector x;
  double fx = 0.0;
};

// What happened inside one iteration. Fields a solver does not use stay at
// their defaults.
struct IterationReport {
  std::uint64_t k = 0;
  double radius = 0.0;
  double d_r = 0.0;
  double h_r = 0.0;
  double step_scale = 0.0;  // L_hat (CARS) or adaptive L_hat_k (CARS-CR)
  bool candidate_skipped = false;
  std::vector<double> candidate_values;  // in the order the solver lists them
  std::size_t chosen = 0;                // index into candidate_values
  double f_before = 0.0;
  double f_after = 0.0;
  std::uint64_t queries = 0;             // consumed by this iteration
};

// Index of the best value in values[first..], earliest on ties, non-finite
// values ranked last.
inline std::size_t safeguard_argmin(const std::vector<double>& values,
                                    std::size_t first = 0) {
  std::size_t best = first;
  for (std::size_t i = first + 1; i < values.size(); ++i) {
    if (is_better(values[i], values[best])) best = i;
  }
  return best;
}

using IterationCallback = std::function<void(const IterationReport&)>;

struct TracePoint {
  std::uint64_t query = 0;
  double best = 0.0;
};

struct TargetResult {
  double eps = 0.0;
  std::optional<std::uint64_t> queries;  // nullopt = unsolved within budget
};

inline bool same_value(double a, double b) {
  return a == b || (std::isnan(a) && std::isnan(b));
}
inline bool operator==(const TracePoint& a, const TracePoint& b) {
  return a.query == b.query && same_value(a.best, b.best);
}
inline bool operator==(const TargetResult& a, const TargetResult& b) {
  return a.eps == b.eps && a.queries == b.queries;
}

inline constexpr int kRecordVersion = 1;

struct RunRecord {
  std::string problem;
  std::string solver;
  std::uint64_t seed = 0;
  std::uint64_t budget = 0;
  std::uint64_t queries_used = 0;
  double f0 = 0.0;
  std::optional<double> f_star;
  double final_best = 0.0;
  std::vector<TargetResult> targets;  // sorted by eps, descending
  std::vector<TracePoint> trace;      // geometrically downsampled
  std::string error;                  // empty on a clean run

};

// Field-for-field equality; NaN compares equal to NaN.
bool operator==(const RunRecord& a, const RunRecord& b);


struct StopCriteria {
  std::uint64_t max_queries = 20000;
  // Relative accuracies eps: solved when best - f* <= eps (f0 - f*).
  std::vector<double> eps;
  // Absolute gap: stop once best - f* <= target_gap.
  std::optional<double> target_gap;
  // Keep iterating after every target is met (benchmarks stop early).
  bool run_to_budget = false;
  bool keep_trace = true;
};

// Watches every query of an oracle and records, exactly and online, the
// first count at which each accuracy target is met.
class ProgressTracker {
 public:
  ProgressTracker(std::optional<double> f_star, std::vector<double> eps,
                  std::optional<double> target_gap, bool keep_trace);

  void observe(std::uint64_t count, double value);
  bool done() const noexcept;

  double f0() const noexcept { return f0_; }
  double best() const noexcept { return best_; }
  std::vector<TargetResult> targets() const;
  std::vector<TracePoint> trace(std::uint64_t final_count) const;

 private:
  std::optional<double> f_star_;
  std::vector<double> eps_;
  std::vector<std::optional<std::uint64_t>> hits_;
  std::optional<double> target_gap_;
  bool gap_hit_ = false;
  bool keep_trace_;
  bool started_ = false;
  double f0_ = 0.0;
  double best_ = 0.0;
  std::uint64_t next_checkpoint_ = 1;
  std::vector<TracePoint> trace_;
};

namespace detail {

// One solver iteration; throws kBudgetExhausted when it cannot complete.
using StepFunction = std::function<IterationReport(SolverState&)>;

// Shared run loop: charge f(x0), then step until the budget is gone or every
// requested target is met.
RunRecord drive(const std::string& problem_name, std::optional<double> f_star,
                const Vector& x0, CountingOracle& oracle,
                const StopCriteria& stop, const StepFunction& step,
                const IterationCallback& on_iteration);

}  // namespace detail

}  // namespace cars
