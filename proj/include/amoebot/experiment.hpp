#pragma once

// Running simulations: one at a time, or as a batch described by an
// ExperimentSpec. Batches have a serial reference runner and an OpenMP runner
// that must produce identical rows.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "amoebot/algorithms.hpp"
#include "amoebot/generators.hpp"
#include "amoebot/scheduler.hpp"
#include "amoebot/validation.hpp"

namespace amoebot {

struct RunRequest {
  Algorithm algorithm = Algorithm::Hex;
  InitialConfig init;
  Schedule schedule;
  std::uint64_t offset_seed = 0;
  int seed_offset = 0;
  std::uint64_t max_rounds = 0;  // 0: default_max_rounds(n)
  bool check = false;            // run the default checkers after every action
};

struct RunResult {
  RunStats stats;
  std::optional<ShapeReport> shape;  // set when the run terminated
  Configuration final_config;

  bool success() const { return stats.outcome == Outcome::Terminated && shape && shape->valid; }
};

/// Runs one simulation to completion. `sim_hook` is called with the
/// simulation before the first step (used to attach tracing or snapshots).
RunResult simulate(const RunRequest& req, const std::function<void(Simulation&)>& sim_hook = {});

ShapeReport validate_shape(Algorithm a, const Configuration& cfg);
std::uint64_t lower_bound(Algorithm a, std::uint64_t n);

struct ExperimentSpec {
  std::vector<Algorithm> algorithms{Algorithm::Hex};
  std::vector<std::size_t> n;
  std::string generator = "line";  // line | random
  std::size_t repetitions = 1;     // init seeds init_seed_base .. +repetitions-1
  std::uint64_t init_seed_base = 0;
  Policy policy = Policy::UniformRandom;
  std::vector<std::uint64_t> sched_seeds{0};
  std::uint64_t offset_seed = 0;
  bool check = false;
  std::string csv_path;  // empty: no file
};

/// Parses and validates a JSON spec. Throws std::invalid_argument on bad input.
ExperimentSpec parse_experiment_spec(const nlohmann::json& j);

struct ExperimentCase {
  Algorithm algorithm;
  std::size_t n;
  std::uint64_t init_seed;
  std::uint64_t sched_seed;
};

struct ExperimentRow {
  ExperimentCase c;
  bool valid = false;
  std::uint64_t work = 0;
  std::uint64_t rounds = 0;
  std::uint64_t activations = 0;
  std::int64_t radius_or_side = -1;
  Outcome outcome = Outcome::Running;
  std::uint64_t max_particle_movements = 0;
  std::uint64_t lower_bound = 0;
  std::string failure;

  friend bool operator==(const ExperimentRow&, const ExperimentRow&);
};

/// Cases in deterministic parameter order: algorithm, n, init seed, sched seed.
std::vector<ExperimentCase> expand_cases(const ExperimentSpec& spec);

ExperimentRow run_case(const ExperimentSpec& spec, const ExperimentCase& c);

/// Reference implementation: one case after another.
std::vector<ExperimentRow> run_experiment_serial(const ExperimentSpec& spec);

/// Same rows, same order; cases run concurrently when OpenMP is available.
std::vector<ExperimentRow> run_experiment_parallel(const ExperimentSpec& spec);

inline constexpr const char* kCsvHeader = "algorithm,n,init_seed,sched_seed,valid,work,rounds,activations,radius_or_side";

void write_csv(std::ostream& out, const std::vector<ExperimentRow>& rows);

struct ExperimentSummary {
  std::size_t rows = 0;
  std::size_t failures = 0;
  std::map<Algorithm, double> slope;  // log-log slope of median work vs n (line generator only)
  std::map<Algorithm, std::map<std::size_t, double>> median_work;
};

ExperimentSummary summarize(const ExperimentSpec& spec, const std::vector<ExperimentRow>& rows);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

double median(std::vector<double> v);

}  // namespace amoebot
