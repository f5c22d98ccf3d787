#include "cars/bench.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <limits>
#include <tuple>
#include <thread>

#include "cars/error.hpp"
#include "cars/sampling.hpp"

namespace cars {
namespace {

bool same_eps(double a, double b) {
  return std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b));
}

std::optional<const TargetResult*> find_target(const RunRecord& r, double eps) {
  for (const TargetResult& t : r.targets) {
    if (same_eps(t.eps, eps)) return &t;
  }
  return std::nullopt;
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace

std::optional<std::uint64_t> solved_query_count(std::span<const TracePoint> trace,
                                                double f0, double f_star,
                                                double eps) {
  if (!(f0 > f_star)) {
    throw Error(ErrorCode::kInvalidTargets, "solved criterion needs f0 > f*");
  }
  if (!(eps > 0.0) || eps > 1.0) {
    throw Error(ErrorCode::kInvalidTargets, "eps must lie in (0, 1]");
  }
  const double threshold = eps * (f0 - f_star);
  for (const TracePoint& p : trace) {
    if (p.best - f_star <= threshold) return p.query;
  }
  return std::nullopt;
}

RatioTable performance_ratios(
    const std::vector<std::string>& solvers,
    const std::vector<std::vector<std::optional<double>>>& counts) {
  RatioTable table;
  table.solvers = solvers;
  for (std::size_t p = 0; p < counts.size(); ++p) {
    const auto& row = counts[p];
    if (row.size() != solvers.size()) {
      throw Error(ErrorCode::kDimensionMismatch, "one count per solver expected");
    }
    double best = std::numeric_limits<double>::infinity();
    for (const auto& t : row) {
      if (t) best = std::min(best, *t);
    }
    std::vector<double> ratios;
    ratios.reserve(row.size());
    for (const auto& t : row) {
      ratios.push_back(t && std::isfinite(best) ? *t / best : kUnsolvedRatio);
    }
    table.instances.push_back({"p" + std::to_string(p + 1), 0});
    table.ratio.push_back(std::move(ratios));
  }
  return table;
}

RatioTable performance_ratios(std::span<const RunRecord> records, double eps) {
  std::vector<std::string> solvers;
  std::vector<Instance> instances;
  for (const RunRecord& r : records) {
    if (std::find(solvers.begin(), solvers.end(), r.solver) == solvers.end()) {
      solvers.push_back(r.solver);
    }
    const Instance inst{r.problem, r.seed};
    if (std::find(instances.begin(), instances.end(), inst) == instances.end()) {
      instances.push_back(inst);
    }
  }
  std::sort(instances.begin(), instances.end());

  std::vector<std::vector<std::optional<double>>> counts(
      instances.size(), std::vector<std::optional<double>>(solvers.size()));
  for (const RunRecord& r : records) {
    const auto target = find_target(r, eps);
    if (!target) {
      throw Error(ErrorCode::kInvalidTargets,
                  "record " + r.problem + "/" + r.solver + " has no target eps=" +
                      format_double(eps));
    }
    if (!(*target)->queries) continue;
    const auto i = static_cast<std::size_t>(
        std::lower_bound(instances.begin(), instances.end(), Instance{r.problem, r.seed}) -
        instances.begin());
    const auto s = static_cast<std::size_t>(
        std::find(solvers.begin(), solvers.end(), r.solver) - solvers.begin());
    counts[i][s] = static_cast<double>(*(*target)->queries);
  }
  RatioTable table = performance_ratios(solvers, counts);
  table.instances = std::move(instances);
  return table;
}

ProfileTable performance_profile(const RatioTable& ratios,
                                 std::span<const double> tau_grid) {
  ProfileTable table;
  table.solvers = ratios.solvers;
  table.tau.assign(tau_grid.begin(), tau_grid.end());
  const double n = static_cast<double>(ratios.ratio.size());
  table.rho.assign(ratios.solvers.size(), std::vector<double>(tau_grid.size(), 0.0));
  for (std::size_t s = 0; s < ratios.solvers.size(); ++s) {
    for (std::size_t j = 0; j < tau_grid.size(); ++j) {
      std::size_t hits = 0;
      for (const auto& row : ratios.ratio) {
        if (row[s] <= tau_grid[j]) ++hits;
      }
      table.rho[s][j] = n > 0 ? static_cast<double>(hits) / n : 0.0;
    }
  }
  return table;
}

std::vector<double> log_tau_grid(double tau_max, std::size_t n) {
  if (!(tau_max >= 1.0) || n == 0) {
    throw Error(ErrorCode::kInvalidConfig, "tau grid needs tau_max >= 1 and n >= 1");
  }
  if (n == 1) return {1.0};
  std::vector<double> grid(n);
  const double log_max = std::log(tau_max);
  for (std::size_t j = 0; j < n; ++j) {
    grid[j] = std::exp(log_max * static_cast<double>(j) / static_cast<double>(n - 1));
  }
  grid.front() = 1.0;
  grid.back() = tau_max;
  return grid;
}

std::string profile_csv(const ProfileTable& table) {
  std::string out = "tau";
  for (const std::string& s : table.solvers) out += "," + s;
  out += "\n";
  for (std::size_t j = 0; j < table.tau.size(); ++j) {
    out += format_double(table.tau[j]);
    for (std::size_t s = 0; s < table.solvers.size(); ++s) {
      out += "," + format_double(table.rho[s][j]);
    }
    out += "\n";
  }
  return out;
}

std::vector<std::uint64_t> seeds_from_master(std::uint64_t master, std::size_t n) {
  std::vector<std::uint64_t> seeds(n);
  for (std::size_t j = 0; j < n; ++j) seeds[j] = child_seed(master, j);
  return seeds;
}

std::vector<RunRecord> run_grid(const GridSpec& spec) {
  if (spec.problems.empty() || spec.solvers.empty() || spec.seeds.empty()) {
    throw Error(ErrorCode::kInvalidConfig, "grid needs problems, solvers and seeds");
  }
  struct Task {
    const Problem* problem;
    const SolverSpec* solver;
    std::uint64_t seed;
  };
  std::vector<Task> tasks;
  for (const Problem& p : spec.problems) {
    for (const SolverSpec& s : spec.solvers) {
      for (std::uint64_t seed : spec.seeds) tasks.push_back({&p, &s, seed});
    }
  }

  StopCriteria stop;
  stop.max_queries = spec.budget;
  stop.eps = spec.eps;

  std::vector<RunRecord> records(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      const Task& t = tasks[i];
      try {
        records[i] = run_solver(*t.problem, *t.solver, t.seed, stop);
      } catch (const std::exception& e) {
        RunRecord failed;
        failed.problem = t.problem->name;
        failed.solver = t.solver->name;
        failed.seed = t.seed;
        failed.budget = spec.budget;
        failed.f0 = std::numeric_limits<double>::quiet_NaN();
        failed.final_best = std::numeric_limits<double>::quiet_NaN();
        failed.f_star = t.problem->f_star;
        for (double e : spec.eps) failed.targets.push_back({e, std::nullopt});
        std::sort(failed.targets.begin(), failed.targets.end(),
                  [](const auto& a, const auto& b) { return a.eps > b.eps; });
        failed.error = e.what();
        records[i] = std::move(failed);
      }
    }
  };
  const unsigned threads = std::max(1u, spec.threads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  std::sort(records.begin(), records.end(), [](const RunRecord& a, const RunRecord& b) {
    return std::tie(a.problem, a.solver, a.seed) < std::tie(b.problem, b.solver, b.seed);
  });
  return records;
}

std::vector<double> available_eps(std::span<const RunRecord> records) {
  std::vector<double> out;
  if (records.empty()) return out;
  for (const TargetResult& t : records.front().targets) {
    const bool everywhere = std::all_of(records.begin(), records.end(), [&](const RunRecord& r) {
      return find_target(r, t.eps).has_value();
    });
    if (everywhere) out.push_back(t.eps);
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

}  // namespace cars
