// Command-line front end over the C API.
#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cars/c_api.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;
constexpr int kExitInternal = 1;

struct Failure {
  cars_status status;
  std::string message;
};

int exit_code(cars_status status) {
  switch (status) {
    case CARS_OK: return kExitOk;
    case CARS_ERR_IO:
    case CARS_ERR_PARSE: return kExitIo;
    case CARS_ERR_INTERNAL: return kExitInternal;
    default: return kExitConfig;
  }
}

void check(cars_status status) {
  if (status != CARS_OK) throw Failure{status, cars_last_error()};
}

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using ProblemPtr = std::unique_ptr<cars_problem, Deleter<cars_problem, cars_problem_free>>;
using ConfigPtr = std::unique_ptr<cars_run_config, Deleter<cars_run_config, cars_run_config_free>>;
using GridPtr = std::unique_ptr<cars_grid_config, Deleter<cars_grid_config, cars_grid_config_free>>;
using RecordsPtr = std::unique_ptr<cars_record_set, Deleter<cars_record_set, cars_record_set_free>>;

struct OwnedString {
  char* s = nullptr;
  ~OwnedString() { cars_string_free(s); }
};

RecordsPtr new_records() {
  cars_record_set* set = nullptr;
  check(cars_record_set_create(&set));
  return RecordsPtr(set);
}

std::string output_path(const std::string& requested, const std::string& fallback_name) {
  if (!requested.empty()) return requested;
  const char* dir = std::getenv("CARS_OUTPUT_DIR");
  if (dir && *dir) return (std::filesystem::path(dir) / fallback_name).string();
  return fallback_name;
}

std::vector<std::string> all_solvers() {
  std::vector<std::string> names;
  for (size_t i = 0; i < cars_solver_count(); ++i) {
    const char* name = nullptr;
    check(cars_solver_name(i, &name));
    names.emplace_back(name);
  }
  return names;
}

ConfigPtr make_config(const std::string& solver) {
  cars_run_config* config = nullptr;
  check(cars_run_config_create(solver.c_str(), &config));
  return ConfigPtr(config);
}

void apply_overrides(cars_run_config* config, const std::vector<std::string>& overrides) {
  for (const std::string& kv : overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw Failure{CARS_ERR_INVALID_CONFIG, "expected key=value, got '" + kv + "'"};
    }
    check(cars_run_config_set(config, kv.substr(0, eq).c_str(), kv.substr(eq + 1).c_str()));
  }
}

ProblemPtr find_problem(const std::string& name) {
  cars_problem* problem = nullptr;
  check(cars_problem_lookup(name.c_str(), &problem));
  return ProblemPtr(problem);
}

struct RunOptions {
  std::string problem = "rosenbrock";
  std::string solver = "cars";
  std::uint64_t seed = 0;
  std::uint64_t budget = 20000;
  std::vector<double> eps{1e-1, 1e-3, 1e-5};
  std::vector<std::string> overrides;
  bool theory = false;
  double holder_a = 1.0;
  std::optional<double> holder_La;
  std::optional<double> mu;
  double epsilon = 1e-6;
  double gamma = 1.0;
  bool run_to_budget = false;
  std::string output;
};

int cmd_list() {
  std::printf("problems:\n");
  for (size_t i = 0; i < cars_problem_registry_size(); ++i) {
    const char* name = nullptr;
    check(cars_problem_registry_name(i, &name));
    ProblemPtr p = find_problem(name);
    std::printf("  %-24s d=%zu\n", name, cars_problem_dim(p.get()));
  }
  std::printf("solvers:\n");
  for (const auto& s : all_solvers()) std::printf("  %s\n", s.c_str());
  return kExitOk;
}

void print_record_summary(const cars_record_set* set, size_t index) {
  cars_record_info info{};
  check(cars_record_get(set, index, &info));
  std::printf("%s %s seed=%llu final_best=%.10g queries=%llu\n", info.problem, info.solver,
              static_cast<unsigned long long>(info.seed), info.final_best,
              static_cast<unsigned long long>(info.queries_used));
  for (size_t t = 0; t < info.target_count; ++t) {
    double eps = 0.0;
    std::int64_t queries = -1;
    check(cars_record_target(set, index, t, &eps, &queries));
    if (queries >= 0) {
      std::printf("  eps=%g solved at %lld queries\n", eps, static_cast<long long>(queries));
    } else {
      std::printf("  eps=%g unsolved\n", eps);
    }
  }
  if (*info.error) std::printf("  error: %s\n", info.error);
}

int cmd_run(const RunOptions& o) {
  ProblemPtr problem = find_problem(o.problem);
  ConfigPtr config = make_config(o.solver);
  apply_overrides(config.get(), o.overrides);
  if (o.theory) {
    if (!o.holder_La || !o.mu) {
      throw Failure{CARS_ERR_INVALID_CONFIG, "--theory-mode requires --holder-La and --mu"};
    }
    check(cars_run_config_set_theory(config.get(), o.holder_a, *o.holder_La, *o.mu, o.epsilon,
                                     o.gamma));
  }
  check(cars_run_config_set_seed(config.get(), o.seed));
  check(cars_run_config_set_budget(config.get(), o.budget));
  check(cars_run_config_set_eps(config.get(), o.eps.data(), o.eps.size()));
  check(cars_run_config_set_run_to_budget(config.get(), o.run_to_budget ? 1 : 0));

  RecordsPtr records = new_records();
  check(cars_run(problem.get(), config.get(), records.get()));
  const std::string path = output_path(o.output, "run.jsonl");
  check(cars_record_set_write(records.get(), path.c_str()));
  print_record_summary(records.get(), 0);
  return kExitOk;
}

struct GridOptions {
  std::vector<std::string> solvers;
  std::vector<std::string> problems;
  size_t seeds = 10;
  std::uint64_t master_seed = 0;
  std::uint64_t budget = 20000;
  std::vector<double> eps{1e-1, 1e-3, 1e-5};
  unsigned threads = 1;
  std::string output;
};

int cmd_grid(const GridOptions& o) {
  cars_grid_config* raw = nullptr;
  check(cars_grid_config_create(&raw));
  GridPtr grid(raw);
  if (o.problems.empty()) {
    check(cars_grid_add_suite(grid.get()));
  } else {
    for (const auto& name : o.problems) {
      ProblemPtr p = find_problem(name);
      check(cars_grid_add_problem(grid.get(), p.get()));
    }
  }
  for (const auto& s : o.solvers.empty() ? all_solvers() : o.solvers) {
    check(cars_grid_add_solver(grid.get(), s.c_str()));
  }
  check(cars_grid_set_seeds(grid.get(), o.seeds, o.master_seed));
  check(cars_grid_set_budget(grid.get(), o.budget));
  check(cars_grid_set_eps(grid.get(), o.eps.data(), o.eps.size()));
  check(cars_grid_set_threads(grid.get(), o.threads));

  RecordsPtr records = new_records();
  check(cars_grid_run(grid.get(), records.get()));
  const std::string path = output_path(o.output, "grid.jsonl");
  check(cars_record_set_write(records.get(), path.c_str()));
  std::printf("wrote %zu records to %s\n", cars_record_set_size(records.get()), path.c_str());
  return kExitOk;
}

struct ProfileOptions {
  std::string records;
  double eps = 1e-3;
  double tau_max = 64.0;
  size_t points = 50;
  std::string output;
};

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out || !(out << text)) throw Failure{CARS_ERR_IO, "cannot write " + path};
}

int cmd_profile(const ProfileOptions& o) {
  cars_record_set* raw = nullptr;
  check(cars_record_set_read(o.records.c_str(), &raw));
  RecordsPtr records(raw);
  OwnedString csv;
  check(cars_profile_csv(records.get(), o.eps, o.tau_max, o.points, &csv.s));
  if (o.output.empty()) {
    std::fputs(csv.s, stdout);
  } else {
    write_text(o.output, csv.s);
  }
  return kExitOk;
}

struct QuarticOptions {
  size_t dim = 30;
  double alpha = 0.1;
  double beta = 0.01;
  std::uint64_t instance_seed = 1;
  std::vector<std::string> solvers{"cars", "cars-cr", "stp", "nesterov-spokoiny", "spsa"};
  size_t seeds = 10;
  std::uint64_t master_seed = 0;
  std::uint64_t budget = 100000;
  double eps = 1e-6;
  unsigned threads = 1;
  std::string output;
  std::string trace;
};

int cmd_quartic(const QuarticOptions& o) {
  cars_problem* raw_problem = nullptr;
  check(cars_problem_make_quartic(o.dim, o.alpha, o.beta, o.instance_seed, &raw_problem));
  ProblemPtr problem(raw_problem);

  cars_grid_config* raw = nullptr;
  check(cars_grid_config_create(&raw));
  GridPtr grid(raw);
  check(cars_grid_add_problem(grid.get(), problem.get()));
  for (const auto& s : o.solvers) check(cars_grid_add_solver(grid.get(), s.c_str()));
  check(cars_grid_set_seeds(grid.get(), o.seeds, o.master_seed));
  check(cars_grid_set_budget(grid.get(), o.budget));
  check(cars_grid_set_eps(grid.get(), &o.eps, 1));
  check(cars_grid_set_threads(grid.get(), o.threads));

  RecordsPtr records = new_records();
  check(cars_grid_run(grid.get(), records.get()));
  const std::string path = output_path(o.output, "quartic.jsonl");
  check(cars_record_set_write(records.get(), path.c_str()));

  std::string csv = "solver,seed,queries,gap\n";
  const size_t n = cars_record_set_size(records.get());
  for (size_t i = 0; i < n; ++i) {
    cars_record_info info{};
    check(cars_record_get(records.get(), i, &info));
    const double f_star = info.has_f_star ? info.f_star : 0.0;
    for (size_t j = 0; j < info.trace_length; ++j) {
      std::uint64_t query = 0;
      double best = 0.0;
      check(cars_record_trace_point(records.get(), i, j, &query, &best));
      char line[160];
      std::snprintf(line, sizeof(line), "%s,%llu,%llu,%.17g\n", info.solver,
                    static_cast<unsigned long long>(info.seed),
                    static_cast<unsigned long long>(query), best - f_star);
      csv += line;
    }
    print_record_summary(records.get(), i);
  }
  write_text(output_path(o.trace, "quartic_trace.csv"), csv);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Curvature-aware random search: solvers and benchmark harness"};
  app.require_subcommand(1);

  app.add_subcommand("list", "List registered problems and solvers");

  RunOptions run;
  auto* run_cmd = app.add_subcommand("run", "Run one solver on one problem");
  run_cmd->add_option("--problem", run.problem, "Problem name")->capture_default_str();
  run_cmd->add_option("--solver", run.solver, "Solver name")->capture_default_str();
  run_cmd->add_option("--seed", run.seed, "Random seed")->capture_default_str();
  run_cmd->add_option("--budget", run.budget, "Query budget")->capture_default_str();
  run_cmd->add_option("--eps", run.eps, "Accuracy targets")->delimiter(',');
  run_cmd->add_option("--set", run.overrides, "Solver parameter override key=value");
  run_cmd->add_flag("--theory-mode", run.theory, "Fixed radius from Hessian Hoelder constants");
  run_cmd->add_option("--holder-a", run.holder_a, "Hoelder exponent")->capture_default_str();
  run_cmd->add_option("--holder-La", run.holder_La, "Hoelder constant");
  run_cmd->add_option("--mu", run.mu, "Strong convexity constant");
  run_cmd->add_option("--epsilon", run.epsilon, "Target accuracy for the radius limit")
      ->capture_default_str();
  run_cmd->add_option("--gamma", run.gamma, "Direction alignment level")->capture_default_str();
  run_cmd->add_flag("--run-to-budget", run.run_to_budget, "Keep going after targets are met");
  run_cmd->add_option("--output", run.output, "Record file");

  GridOptions grid;
  auto* grid_cmd = app.add_subcommand("grid", "Run the benchmark grid");
  grid_cmd->add_option("--solvers", grid.solvers, "Solvers (default: all)")->delimiter(',');
  grid_cmd->add_option("--problems", grid.problems, "Problems (default: suite)")->delimiter(',');
  grid_cmd->add_option("--seeds", grid.seeds, "Seeds per pair")->capture_default_str();
  grid_cmd->add_option("--master-seed", grid.master_seed, "Master seed")->capture_default_str();
  grid_cmd->add_option("--budget", grid.budget, "Query budget")->capture_default_str();
  grid_cmd->add_option("--eps", grid.eps, "Accuracy targets")->delimiter(',');
  grid_cmd->add_option("--threads", grid.threads, "Worker threads")->capture_default_str();
  grid_cmd->add_option("--output", grid.output, "Record file");

  ProfileOptions profile;
  auto* profile_cmd = app.add_subcommand("profile", "Performance profile CSV from records");
  profile_cmd->add_option("--records", profile.records, "Record file")->required();
  profile_cmd->add_option("--eps", profile.eps, "Accuracy level")->capture_default_str();
  profile_cmd->add_option("--tau-max", profile.tau_max, "Largest ratio")->capture_default_str();
  profile_cmd->add_option("--points", profile.points, "Grid points")->capture_default_str();
  profile_cmd->add_option("--output", profile.output, "CSV file (default: stdout)");

  QuarticOptions quartic;
  auto* quartic_cmd = app.add_subcommand("quartic", "Quartic convergence experiment");
  quartic_cmd->add_option("--dim", quartic.dim)->capture_default_str();
  quartic_cmd->add_option("--alpha", quartic.alpha)->capture_default_str();
  quartic_cmd->add_option("--beta", quartic.beta)->capture_default_str();
  quartic_cmd->add_option("--instance-seed", quartic.instance_seed)->capture_default_str();
  quartic_cmd->add_option("--solvers", quartic.solvers)->delimiter(',');
  quartic_cmd->add_option("--seeds", quartic.seeds)->capture_default_str();
  quartic_cmd->add_option("--master-seed", quartic.master_seed)->capture_default_str();
  quartic_cmd->add_option("--budget", quartic.budget)->capture_default_str();
  quartic_cmd->add_option("--eps", quartic.eps)->capture_default_str();
  quartic_cmd->add_option("--threads", quartic.threads)->capture_default_str();
  quartic_cmd->add_option("--output", quartic.output, "Record file");
  quartic_cmd->add_option("--trace", quartic.trace, "Trace CSV file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (app.got_subcommand("list")) return cmd_list();
    if (app.got_subcommand(run_cmd)) return cmd_run(run);
    if (app.got_subcommand(grid_cmd)) return cmd_grid(grid);
    if (app.got_subcommand(profile_cmd)) return cmd_profile(profile);
    if (app.got_subcommand(quartic_cmd)) return cmd_quartic(quartic);
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return exit_code(f.status);
  }
  return kExitConfig;
}
