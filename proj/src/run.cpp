#include "cars/run.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cars/error.hpp"

namespace cars {

ProgressTracker::ProgressTracker(std::optional<double> f_star,
                                 std::vector<double> eps,
                                 std::optional<double> target_gap,
                                 bool keep_trace)
    : f_star_(f_star),
      eps_(std::move(eps)),
      hits_(eps_.size()),
      target_gap_(target_gap),
      keep_trace_(keep_trace) {}

void ProgressTracker::observe(std::uint64_t count, double value) {
  if (!started_) {
    started_ = true;
    f0_ = value;
    best_ = value;
  } else if (is_better(value, best_)) {
    best_ = value;
  }
  if (f_star_) {
    const double gap = best_ - *f_star_;
    for (std::size_t i = 0; i < eps_.size(); ++i) {
      if (!hits_[i] && gap <= eps_[i] * (f0_ - *f_star_)) hits_[i] = count;
    }
    if (target_gap_ && gap <= *target_gap_) gap_hit_ = true;
  }
  if (keep_trace_ && count >= next_checkpoint_) {
    trace_.push_back({count, best_});
    next_checkpoint_ = std::max<std::uint64_t>(
        count + 1,
        static_cast<std::uint64_t>(std::ceil(static_cast<double>(count) * 1.1)));
  }
}

bool ProgressTracker::done() const noexcept {
  if (gap_hit_) return true;
  if (eps_.empty() || !f_star_) return false;
  return std::all_of(hits_.begin(), hits_.end(),
                     [](const auto& h) { return h.has_value(); });
}

std::vector<TargetResult> ProgressTracker::targets() const {
  std::vector<TargetResult> out;
  out.reserve(eps_.size());
  for (std::size_t i = 0; i < eps_.size(); ++i) out.push_back({eps_[i], hits_[i]});
  std::sort(out.begin(), out.end(),
            [](const TargetResult& a, const TargetResult& b) { return a.eps > b.eps; });
  return out;
}

std::vector<TracePoint> ProgressTracker::trace(std::uint64_t final_count) const {
  std::vector<TracePoint> out = trace_;
  if (keep_trace_ && started_ && (out.empty() || out.back().query != final_count)) {
    out.push_back({final_count, best_});
  }
  return out;
}

bool operator==(const RunRecord& a, const RunRecord& b) {
  const bool f_star_equal =
      a.f_star.has_value() == b.f_star.has_value() &&
      (!a.f_star || same_value(*a.f_star, *b.f_star));
  return a.problem == b.problem && a.solver == b.solver && a.seed == b.seed &&
         a.budget == b.budget && a.queries_used == b.queries_used &&
         same_value(a.f0, b.f0) && f_star_equal &&
         same_value(a.final_best, b.final_best) && a.targets == b.targets &&
         a.trace == b.trace && a.error == b.error;
}

namespace detail {

RunRecord drive(const std::string& problem_name, std::optional<double> f_star,
                const Vector& x0, CountingOracle& oracle,
                const StopCriteria& stop, const StepFunction& step,
                const IterationCallback& on_iteration) {
  for (double e : stop.eps) {
    if (!(e > 0.0) || e > 1.0) {
      throw Error(ErrorCode::kInvalidTargets, "accuracy targets must lie in (0, 1]");
    }
  }
  if (stop.max_queries == 0) {
    throw Error(ErrorCode::kInvalidConfig, "max_queries must be positive");
  }
  oracle.limit_budget(stop.max_queries);

  ProgressTracker tracker(f_star, stop.eps, stop.target_gap, stop.keep_trace);
  oracle.set_observer(
      [&tracker](std::uint64_t count, double value) { tracker.observe(count, value); });

  RunRecord record;
  record.problem = problem_name;
  record.budget = *oracle.budget();
  record.f_star = f_star;

  try {
    SolverState state;
    state.x = x0;
    state.fx = oracle.evaluate(x0);
    if (f_star && !stop.eps.empty() && !(state.fx > *f_star)) {
      throw Error(ErrorCode::kInvalidTargets,
                  "relative targets need f(x0) > f*");
    }
    while (stop.run_to_budget || !tracker.done()) {
      IterationReport report;
      try {
        report = step(state);
      } catch (const Error& e) {
        if (e.code() == ErrorCode::kBudgetExhausted) break;
        throw;
      }
      if (on_iteration) on_iteration(report);
      if (report.queries == 0) break;  // a step that cannot probe will not progress
    }
  } catch (...) {
    oracle.set_observer({});
    throw;
  }
  oracle.set_observer({});

  record.queries_used = oracle.count();
  record.f0 = tracker.f0();
  record.final_best = oracle.best_value();
  record.targets = tracker.targets();
  record.trace = tracker.trace(oracle.count());
  return record;
}

}  // namespace detail
}  // namespace cars
