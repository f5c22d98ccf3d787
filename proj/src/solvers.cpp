#include "cars/solvers.hpp"

#include <algorithm>
#include <charconv>
#include <string>

#include "cars/error.hpp"

namespace cars {
namespace {

double parse_number(const std::string& key, const std::string& text) {
  double value = 0.0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw Error(ErrorCode::kInvalidConfig,
                "parameter " + key + ": '" + text + "' is not a number");
  }
  return value;
}

std::size_t parse_count(const std::string& key, const std::string& text) {
  std::size_t value = 0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || value == 0) {
    throw Error(ErrorCode::kInvalidConfig,
                "parameter " + key + ": '" + text + "' is not a positive integer");
  }
  return value;
}

[[noreturn]] void unknown_key(std::string_view solver, const std::string& key) {
  std::string keys;
  for (const std::string& k : solver_parameter_keys(solver)) {
    keys += keys.empty() ? k : ", " + k;
  }
  throw Error(ErrorCode::kInvalidConfig, "unknown parameter '" + key + "' for " +
                                             std::string(solver) + " (accepted: " +
                                             keys + ")");
}

bool set_sampler(SamplerSpec& spec, const std::string& key, const std::string& value) {
  if (key == "sampler") {
    spec.kind = parse_direction_kind(value);
    return true;
  }
  if (key == "m") {
    spec.m = parse_count(key, value);
    return true;
  }
  return false;
}

CarsConfig make_cars(const Overrides& overrides) {
  CarsConfig c;
  for (const auto& [key, value] : overrides) {
    if (set_sampler(c.sampler, key, value)) continue;
    if (key == "L_hat") {
      c.L_hat = parse_number(key, value);
    } else if (key == "r0") {
      c.radius = Decreasing{parse_number(key, value)};
    } else if (key == "C") {
      c.radius = FixedLimit{parse_number(key, value)};
    } else if (key == "curvature") {
      if (value == "skip") {
        c.curvature = CurvaturePolicy::kSkipNonpositive;
      } else if (value == "always") {
        c.curvature = CurvaturePolicy::kAlwaysAttempt;
      } else {
        throw Error(ErrorCode::kInvalidConfig,
                    "curvature must be 'skip' or 'always', got '" + value + "'");
      }
    } else {
      unknown_key("cars", key);
    }
  }
  c.validate();
  return c;
}

CarsCrConfig make_cars_cr(const Overrides& overrides) {
  CarsCrConfig c;
  c.sampler.normalize = true;
  std::optional<CubicRadiusSchedule> schedule;
  auto sched = [&]() -> CubicRadiusSchedule& {
    if (!schedule) schedule.emplace();
    return *schedule;
  };
  for (const auto& [key, value] : overrides) {
    if (set_sampler(c.sampler, key, value)) continue;
    if (key == "M") {
      c.M = parse_number(key, value);
    } else if (key == "r0") {
      c.radius = Decreasing{parse_number(key, value)};
    } else if (key == "epsilon") {
      sched().epsilon = parse_number(key, value);
    } else if (key == "R") {
      sched().R = parse_number(key, value);
    } else if (key == "B") {
      sched().B = parse_number(key, value);
    } else if (key == "L_est") {
      sched().L_estimate = parse_number(key, value);
    } else if (key == "f_star_est") {
      sched().f_star_estimate = parse_number(key, value);
    } else {
      unknown_key("cars-cr", key);
    }
  }
  if (schedule) c.radius = *schedule;
  c.validate();
  return c;
}

StpConfig make_stp(const Overrides& overrides) {
  StpConfig c;
  for (const auto& [key, value] : overrides) {
    if (set_sampler(c.sampler, key, value)) continue;
    if (key == "alpha0") {
      const double a0 = parse_number(key, value);
      c.step_schedule = [a0](std::uint64_t k) {
        return a0 / std::sqrt(static_cast<double>(k + 1));
      };
    } else {
      unknown_key("stp", key);
    }
  }
  c.validate();
  return c;
}

NesterovConfig make_nesterov(const Overrides& overrides) {
  NesterovConfig c;
  for (const auto& [key, value] : overrides) {
    if (set_sampler(c.sampler, key, value)) continue;
    if (key == "alpha") {
      c.alpha = parse_number(key, value);
    } else if (key == "mu") {
      c.mu_fd = parse_number(key, value);
    } else {
      unknown_key("nesterov-spokoiny", key);
    }
  }
  c.validate();
  return c;
}

SpsaConfig make_spsa(const Overrides& overrides) {
  SpsaConfig c;
  for (const auto& [key, value] : overrides) {
    if (set_sampler(c.sampler, key, value)) continue;
    if (key == "a") {
      c.a = parse_number(key, value);
    } else if (key == "A") {
      c.A = parse_number(key, value);
    } else if (key == "alpha") {
      c.alpha_exp = parse_number(key, value);
    } else if (key == "c") {
      c.c = parse_number(key, value);
    } else if (key == "gamma") {
      c.gamma_exp = parse_number(key, value);
    } else {
      unknown_key("spsa", key);
    }
  }
  c.validate();
  return c;
}

}  // namespace

std::vector<std::string> solver_names() {
  return {"cars", "cars-cr", "stp", "nesterov-spokoiny", "spsa"};
}

std::vector<std::string> solver_parameter_keys(std::string_view name) {
  if (name == "cars") return {"L_hat", "r0", "C", "curvature", "sampler", "m"};
  if (name == "cars-cr") {
    return {"M", "r0", "epsilon", "R", "B", "L_est", "f_star_est", "sampler", "m"};
  }
  if (name == "stp") return {"alpha0", "sampler", "m"};
  if (name == "nesterov-spokoiny") return {"alpha", "mu", "sampler", "m"};
  if (name == "spsa") return {"a", "A", "alpha", "c", "gamma", "sampler", "m"};
  return {};
}

SolverSpec make_solver(std::string_view name, const Overrides& overrides) {
  SolverSpec spec;
  spec.name = std::string(name);
  if (name == "cars") {
    spec.config = make_cars(overrides);
  } else if (name == "cars-cr") {
    spec.config = make_cars_cr(overrides);
  } else if (name == "stp") {
    spec.config = make_stp(overrides);
  } else if (name == "nesterov-spokoiny") {
    spec.config = make_nesterov(overrides);
  } else if (name == "spsa") {
    spec.config = make_spsa(overrides);
  } else {
    std::string valid;
    for (const std::string& s : solver_names()) valid += valid.empty() ? s : ", " + s;
    throw Error(ErrorCode::kUnknownSolver,
                "unknown solver '" + std::string(name) + "' (valid: " + valid + ")");
  }
  return spec;
}

void apply_theory_mode(SolverSpec& spec, const HolderConstants& hc) {
  auto* cars = std::get_if<CarsConfig>(&spec.config);
  if (!cars) {
    throw Error(ErrorCode::kInvalidConfig, "theory mode applies to cars only");
  }
  cars->radius = FixedLimit{radius_limit_C(hc)};
}

RunRecord run_solver(const Problem& problem, const SolverSpec& solver,
                     std::uint64_t seed, const StopCriteria& stop,
                     const IterationCallback& on_iteration) {
  CountingOracle oracle(problem.objective, stop.max_queries);
  RunRecord record = std::visit(
      [&](const auto& config) {
        DirectionSampler sampler(config.sampler, problem.dim, seed);
        using T = std::decay_t<decltype(config)>;
        if constexpr (std::is_same_v<T, CarsConfig>) {
          return run_cars(problem, config, sampler, oracle, stop, on_iteration);
        } else if constexpr (std::is_same_v<T, CarsCrConfig>) {
          return run_cars_cr(problem, config, sampler, oracle, stop, on_iteration);
        } else if constexpr (std::is_same_v<T, StpConfig>) {
          return run_stp(problem, config, sampler, oracle, stop, on_iteration);
        } else if constexpr (std::is_same_v<T, NesterovConfig>) {
          return run_nesterov_spokoiny(problem, config, sampler, oracle, stop,
                                       on_iteration);
        } else {
          return run_spsa(problem, config, sampler, oracle, stop, on_iteration);
        }
      },
      solver.config);
  record.solver = solver.name;
  record.seed = seed;
  return record;
}

}  // namespace cars
