#include "cars/c_api.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <memory>
#include <cstring>
#include <string>
#include <vector>

#include "cars/bench.hpp"
#include "cars/error.hpp"
#include "cars/problems.hpp"
#include "cars/records.hpp"
#include "cars/solvers.hpp"

struct cars_problem {
  cars::Problem problem;
};

struct cars_run_config {
  std::string solver;
  cars::Overrides overrides;
  std::optional<cars::HolderConstants> theory;
  cars::SolverSpec spec;
  std::uint64_t seed = 0;
  cars::StopCriteria stop;
};

struct cars_grid_config {
  cars::GridSpec spec;
};

struct cars_record_set {
  std::vector<cars::RunRecord> records;
};

namespace {

thread_local std::string g_last_error;

cars_status to_status(cars::ErrorCode code) {
  return static_cast<cars_status>(static_cast<int>(code));
}

template <class F>
cars_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return CARS_OK;
  } catch (const cars::Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return CARS_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return CARS_ERR_INTERNAL;
  }
}

cars_status invalid(const char* what) {
  g_last_error = what;
  return CARS_ERR_INVALID_ARGUMENT;
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

const std::vector<std::string>& problem_registry() {
  static const std::vector<std::string> names = cars::registered_problems();
  return names;
}

const std::vector<std::string>& solver_registry() {
  static const std::vector<std::string> names = cars::solver_names();
  return names;
}

void rebuild(cars_run_config& c) {
  cars::SolverSpec spec = cars::make_solver(c.solver, c.overrides);
  if (c.theory) cars::apply_theory_mode(spec, *c.theory);
  c.spec = std::move(spec);
}

std::vector<double> to_eps(const double* eps, size_t count) {
  if (count > 0 && !eps) throw cars::Error(cars::ErrorCode::kInvalidTargets, "null eps array");
  std::vector<double> out(eps, eps + count);
  for (double e : out) {
    if (!(e > 0.0) || e > 1.0) {
      throw cars::Error(cars::ErrorCode::kInvalidTargets, "eps values must lie in (0, 1]");
    }
  }
  return out;
}

}  // namespace

extern "C" {

const char* cars_version(void) { return "1.0.0"; }

const char* cars_status_string(cars_status status) {
  switch (status) {
    case CARS_OK: return "ok";
    case CARS_ERR_INVALID_ARGUMENT: return "invalid argument";
    case CARS_ERR_INTERNAL: return "internal error";
    default:
      if (status >= CARS_ERR_BUDGET_EXHAUSTED && status <= CARS_ERR_IO) {
        return cars::to_string(static_cast<cars::ErrorCode>(status));
      }
      return "unknown status";
  }
}

const char* cars_last_error(void) { return g_last_error.c_str(); }

void cars_string_free(char* s) { std::free(s); }

size_t cars_problem_registry_size(void) { return problem_registry().size(); }

cars_status cars_problem_registry_name(size_t index, const char** name) {
  if (!name || index >= problem_registry().size()) return invalid("index out of range");
  *name = problem_registry()[index].c_str();
  return CARS_OK;
}

cars_status cars_problem_lookup(const char* name, cars_problem** out) {
  if (!name || !out) return invalid("null argument");
  return guarded([&] { *out = new cars_problem{cars::lookup(name)}; });
}

cars_status cars_problem_make_quartic(size_t dim, double alpha, double beta,
                                      uint64_t seed, cars_problem** out) {
  if (!out) return invalid("null argument");
  return guarded([&] { *out = new cars_problem{cars::make_quartic(dim, alpha, beta, seed)}; });
}

void cars_problem_free(cars_problem* problem) { delete problem; }

const char* cars_problem_name(const cars_problem* problem) {
  return problem ? problem->problem.name.c_str() : "";
}

size_t cars_problem_dim(const cars_problem* problem) {
  return problem ? problem->problem.dim : 0;
}

int cars_problem_f_star(const cars_problem* problem, double* f_star) {
  if (!problem || !problem->problem.f_star) return 0;
  if (f_star) *f_star = *problem->problem.f_star;
  return 1;
}

cars_status cars_problem_x0(const cars_problem* problem, double* x, size_t dim) {
  if (!problem || !x) return invalid("null argument");
  return guarded([&] {
    if (dim != problem->problem.dim) {
      throw cars::Error(cars::ErrorCode::kDimensionMismatch, "x0 buffer has wrong length");
    }
    std::copy(problem->problem.x0.begin(), problem->problem.x0.end(), x);
  });
}

cars_status cars_problem_evaluate(const cars_problem* problem, const double* x,
                                  size_t dim, double* value) {
  if (!problem || !x || !value) return invalid("null argument");
  return guarded([&] {
    if (dim != problem->problem.dim) {
      throw cars::Error(cars::ErrorCode::kDimensionMismatch, "point has wrong length");
    }
    const cars::Vector v = Eigen::Map<const cars::Vector>(x, static_cast<Eigen::Index>(dim));
    *value = problem->problem(v);
  });
}

size_t cars_solver_count(void) { return solver_registry().size(); }

cars_status cars_solver_name(size_t index, const char** name) {
  if (!name || index >= solver_registry().size()) return invalid("index out of range");
  *name = solver_registry()[index].c_str();
  return CARS_OK;
}

cars_status cars_run_config_create(const char* solver, cars_run_config** out) {
  if (!solver || !out) return invalid("null argument");
  return guarded([&] {
    auto config = std::make_unique<cars_run_config>();
    config->solver = solver;
    rebuild(*config);
    *out = config.release();
  });
}

void cars_run_config_free(cars_run_config* config) { delete config; }

cars_status cars_run_config_set(cars_run_config* config, const char* key,
                                const char* value) {
  if (!config || !key || !value) return invalid("null argument");
  return guarded([&] {
    cars_run_config trial = *config;
    trial.overrides.emplace_back(key, value);
    rebuild(trial);
    *config = std::move(trial);
  });
}

cars_status cars_run_config_set_seed(cars_run_config* config, uint64_t seed) {
  if (!config) return invalid("null argument");
  config->seed = seed;
  return CARS_OK;
}

cars_status cars_run_config_set_budget(cars_run_config* config, uint64_t budget) {
  if (!config) return invalid("null argument");
  return guarded([&] {
    if (budget == 0) throw cars::Error(cars::ErrorCode::kInvalidConfig, "budget must be positive");
    config->stop.max_queries = budget;
  });
}

cars_status cars_run_config_set_eps(cars_run_config* config, const double* eps,
                                    size_t count) {
  if (!config) return invalid("null argument");
  return guarded([&] { config->stop.eps = to_eps(eps, count); });
}

cars_status cars_run_config_set_target_gap(cars_run_config* config, double gap) {
  if (!config) return invalid("null argument");
  config->stop.target_gap = gap;
  return CARS_OK;
}

cars_status cars_run_config_set_run_to_budget(cars_run_config* config, int enabled) {
  if (!config) return invalid("null argument");
  config->stop.run_to_budget = enabled != 0;
  return CARS_OK;
}

cars_status cars_run_config_set_theory(cars_run_config* config, double a,
                                       double L_a, double mu, double epsilon,
                                       double gamma) {
  if (!config) return invalid("null argument");
  return guarded([&] {
    cars_run_config trial = *config;
    trial.theory = cars::HolderConstants{a, L_a, mu, epsilon, gamma};
    rebuild(trial);
    *config = std::move(trial);
  });
}

cars_status cars_radius_limit(double a, double L_a, double mu, double epsilon,
                              double gamma, double* C) {
  if (!C) return invalid("null argument");
  return guarded([&] { *C = cars::radius_limit_C({a, L_a, mu, epsilon, gamma}); });
}

cars_status cars_run(const cars_problem* problem, const cars_run_config* config,
                     cars_record_set* sink) {
  if (!problem || !config || !sink) return invalid("null argument");
  return guarded([&] {
    sink->records.push_back(
        cars::run_solver(problem->problem, config->spec, config->seed, config->stop));
  });
}

cars_status cars_grid_config_create(cars_grid_config** out) {
  if (!out) return invalid("null argument");
  return guarded([&] {
    auto grid = std::make_unique<cars_grid_config>();
    grid->spec.seeds = cars::seeds_from_master(0, 10);
    *out = grid.release();
  });
}

void cars_grid_config_free(cars_grid_config* grid) { delete grid; }

cars_status cars_grid_add_problem(cars_grid_config* grid, const cars_problem* problem) {
  if (!grid || !problem) return invalid("null argument");
  return guarded([&] { grid->spec.problems.push_back(problem->problem); });
}

cars_status cars_grid_add_suite(cars_grid_config* grid) {
  if (!grid) return invalid("null argument");
  return guarded([&] {
    for (cars::Problem& p : cars::mgh_suite()) grid->spec.problems.push_back(std::move(p));
  });
}

cars_status cars_grid_add_solver(cars_grid_config* grid, const char* solver) {
  if (!grid || !solver) return invalid("null argument");
  return guarded([&] { grid->spec.solvers.push_back(cars::make_solver(solver)); });
}

cars_status cars_grid_add_run_config(cars_grid_config* grid, const cars_run_config* config) {
  if (!grid || !config) return invalid("null argument");
  return guarded([&] { grid->spec.solvers.push_back(config->spec); });
}

cars_status cars_grid_set_seeds(cars_grid_config* grid, size_t n, uint64_t master_seed) {
  if (!grid) return invalid("null argument");
  return guarded([&] {
    if (n == 0) throw cars::Error(cars::ErrorCode::kInvalidConfig, "need at least one seed");
    grid->spec.seeds = cars::seeds_from_master(master_seed, n);
  });
}

cars_status cars_grid_set_budget(cars_grid_config* grid, uint64_t budget) {
  if (!grid) return invalid("null argument");
  return guarded([&] {
    if (budget == 0) throw cars::Error(cars::ErrorCode::kInvalidConfig, "budget must be positive");
    grid->spec.budget = budget;
  });
}

cars_status cars_grid_set_eps(cars_grid_config* grid, const double* eps, size_t count) {
  if (!grid) return invalid("null argument");
  return guarded([&] { grid->spec.eps = to_eps(eps, count); });
}

cars_status cars_grid_set_threads(cars_grid_config* grid, unsigned threads) {
  if (!grid) return invalid("null argument");
  grid->spec.threads = threads == 0 ? 1 : threads;
  return CARS_OK;
}

cars_status cars_grid_run(const cars_grid_config* grid, cars_record_set* sink) {
  if (!grid || !sink) return invalid("null argument");
  return guarded([&] {
    std::vector<cars::RunRecord> records = cars::run_grid(grid->spec);
    sink->records.insert(sink->records.end(), std::make_move_iterator(records.begin()),
                         std::make_move_iterator(records.end()));
  });
}

cars_status cars_record_set_create(cars_record_set** out) {
  if (!out) return invalid("null argument");
  return guarded([&] { *out = new cars_record_set(); });
}

void cars_record_set_free(cars_record_set* set) { delete set; }

size_t cars_record_set_size(const cars_record_set* set) {
  return set ? set->records.size() : 0;
}

cars_status cars_record_get(const cars_record_set* set, size_t index,
                            cars_record_info* info) {
  if (!set || !info || index >= set->records.size()) return invalid("index out of range");
  const cars::RunRecord& r = set->records[index];
  info->problem = r.problem.c_str();
  info->solver = r.solver.c_str();
  info->error = r.error.c_str();
  info->seed = r.seed;
  info->budget = r.budget;
  info->queries_used = r.queries_used;
  info->f0 = r.f0;
  info->final_best = r.final_best;
  info->has_f_star = r.f_star ? 1 : 0;
  info->f_star = r.f_star.value_or(0.0);
  info->target_count = r.targets.size();
  info->trace_length = r.trace.size();
  return CARS_OK;
}

cars_status cars_record_target(const cars_record_set* set, size_t index,
                               size_t target, double* eps, int64_t* queries) {
  if (!set || index >= set->records.size() ||
      target >= set->records[index].targets.size()) {
    return invalid("index out of range");
  }
  const cars::TargetResult& t = set->records[index].targets[target];
  if (eps) *eps = t.eps;
  if (queries) *queries = t.queries ? static_cast<int64_t>(*t.queries) : -1;
  return CARS_OK;
}

cars_status cars_record_trace_point(const cars_record_set* set, size_t index,
                                    size_t point, uint64_t* query, double* best) {
  if (!set || index >= set->records.size() ||
      point >= set->records[index].trace.size()) {
    return invalid("index out of range");
  }
  const cars::TracePoint& p = set->records[index].trace[point];
  if (query) *query = p.query;
  if (best) *best = p.best;
  return CARS_OK;
}

cars_status cars_record_set_to_text(const cars_record_set* set, char** text) {
  if (!set || !text) return invalid("null argument");
  return guarded([&] { *text = copy_string(cars::records_to_text(set->records)); });
}

cars_status cars_record_set_append_text(cars_record_set* set, const char* text) {
  if (!set || !text) return invalid("null argument");
  return guarded([&] {
    std::vector<cars::RunRecord> parsed = cars::records_from_text(text);
    set->records.insert(set->records.end(), parsed.begin(), parsed.end());
  });
}

cars_status cars_record_set_write(const cars_record_set* set, const char* path) {
  if (!set || !path) return invalid("null argument");
  return guarded([&] { cars::write_records(path, set->records); });
}

cars_status cars_record_set_read(const char* path, cars_record_set** out) {
  if (!path || !out) return invalid("null argument");
  return guarded([&] {
    auto set = std::make_unique<cars_record_set>();
    set->records = cars::read_records(path);
    *out = set.release();
  });
}

cars_status cars_profile_csv(const cars_record_set* set, double eps,
                             double tau_max, size_t points, char** csv) {
  if (!set || !csv) return invalid("null argument");
  if (set->records.empty()) return invalid("record set is empty");
  return guarded([&] {
    const std::vector<double> available = cars::available_eps(set->records);
    const bool present = std::any_of(available.begin(), available.end(), [&](double e) {
      return std::abs(e - eps) <= 1e-12 * std::max(std::abs(e), std::abs(eps));
    });
    if (!present) {
      std::string list;
      for (double e : available) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%g", e);
        list += list.empty() ? buf : std::string(", ") + buf;
      }
      throw cars::Error(cars::ErrorCode::kInvalidTargets,
                        "eps not present in records (available: " +
                            (list.empty() ? std::string("none") : list) + ")");
    }
    const cars::RatioTable ratios = cars::performance_ratios(set->records, eps);
    const std::vector<double> grid = cars::log_tau_grid(tau_max, points);
    *csv = copy_string(cars::profile_csv(cars::performance_profile(ratios, grid)));
  });
}

}  // extern "C"
