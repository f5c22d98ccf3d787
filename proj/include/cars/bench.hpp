#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cars/problems.hpp"
#include "cars/run.hpp"
#include "cars/solvers.hpp"

namespace cars {

// Ratio assigned to unsolved (problem, solver) pairs.
inline constexpr double kUnsolvedRatio = 1e20;

// First query count at which best - f* <= eps (f0 - f*), or nullopt.
// `trace` must list the best value after every query in order. Throws
// kInvalidTargets when f0 <= f_star or eps is outside (0, 1].
std::optional<std::uint64_t> solved_query_count(std::span<const TracePoint> trace,
                                                double f0, double f_star,
                                                double eps);

// A profile instance: one problem under one seed. Repeats count separately.
struct Instance {
  std::string problem;
  std::uint64_t seed = 0;
  auto operator<=>(const Instance&) const = default;
};

struct RatioTable {
  std::vector<std::string> solvers;
  std::vector<Instance> instances;
  // ratio[i][s] for instance i and solver s.
  std::vector<std::vector<double>> ratio;
};

// Query counts t_{p,s} at accuracy `eps`, grouped by (problem, seed).
// Missing records count as unsolved. Throws kInvalidTargets when some record
// lacks `eps`.
RatioTable performance_ratios(std::span<const RunRecord> records, double eps);

// Direct form: t[p][s], nullopt = unsolved.
RatioTable performance_ratios(
    const std::vector<std::string>& solvers,
    const std::vector<std::vector<std::optional<double>>>& counts);

struct ProfileTable {
  std::vector<std::string> solvers;
  std::vector<double> tau;
  std::vector<std::vector<double>> rho;  // rho[s][j] at tau[j]
};

// rho_s(tau) = |{p : r_{p,s} <= tau}| / |P|.
ProfileTable performance_profile(const RatioTable& ratios,
                                 std::span<const double> tau_grid);

// n log-spaced points on [1, tau_max], both ends included.
std::vector<double> log_tau_grid(double tau_max, std::size_t n);

// "tau,<s1>,<s2>,..." then one row per tau.
std::string profile_csv(const ProfileTable& table);

struct GridSpec {
  std::vector<Problem> problems;
  std::vector<SolverSpec> solvers;
  std::vector<std::uint64_t> seeds;
  std::uint64_t budget = 20000;
  std::vector<double> eps{1e-1, 1e-3, 1e-5};
  unsigned threads = 1;
};

// seed_j = child_seed(master, j), j < n.
std::vector<std::uint64_t> seeds_from_master(std::uint64_t master,
                                             std::size_t n);

// Every (problem, solver, seed) run independently; failures become unsolved
// records with `error` set. Output sorted by (problem, solver, seed).
std::vector<RunRecord> run_grid(const GridSpec& spec);

// Accuracies present in every record, descending.
std::vector<double> available_eps(std::span<const RunRecord> records);

}  // namespace cars
