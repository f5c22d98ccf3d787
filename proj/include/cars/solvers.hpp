#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "cars/baselines.hpp"
#include "cars/cars.hpp"
#include "cars/cars_cr.hpp"
#include "cars/problems.hpp"
#include "cars/run.hpp"

namespace cars {

using SolverConfig = std::variant<CarsConfig, CarsCrConfig, StpConfig,
                                  NesterovConfig, SpsaConfig>;

struct SolverSpec {
  std::string name;
  SolverConfig config;
};

// "cars", "cars-cr", "stp", "nesterov-spokoiny", "spsa".
std::vector<std::string> solver_names();

// Accepted --set keys for a solver.
std::vector<std::string> solver_parameter_keys(std::string_view name);

using Overrides = std::vector<std::pair<std::string, std::string>>;

// Defaults reproduce the published benchmark settings. Unknown solver names
// throw kUnknownSolver; unknown keys or unparsable values throw
// kInvalidConfig.
SolverSpec make_solver(std::string_view name, const Overrides& overrides = {});

// Switches CARS to the fixed scale-free radius C computed from `hc`.
void apply_theory_mode(SolverSpec& spec, const HolderConstants& hc);

// Runs one (problem, solver, seed) with a fresh oracle and sampler.
RunRecord run_solver(const Problem& problem, const SolverSpec& solver,
                     std::uint64_t seed, const StopCriteria& stop,
                     const IterationCallback& on_iteration = {});

}  // namespace cars
