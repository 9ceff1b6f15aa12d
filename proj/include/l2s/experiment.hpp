#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "l2s/bo.hpp"
#include "l2s/config.hpp"
#include "l2s/objective.hpp"

namespace l2s {

/// A named optimisation method. "random-search" bypasses the surrogate entirely.
struct MethodSpec {
  std::string name;
  bool random_search = false;
  AfoSolver solver = AfoSolver::l2s_disco;
  AcquisitionKind acquisition = AcquisitionKind::ucb;
};

/// l2s-disco-{ucb,ei}, rr-local-search[-{ucb,ei}], sim-anneal[-{ucb,ei}],
/// exhaustive-{ucb,ei}, random-search. Bare names default to UCB.
MethodSpec parse_method(const std::string& name);

/// Builds the benchmark named by benchmark.name (labs | contamination | ising | synthetic).
std::unique_ptr<Objective> make_objective(const Config& config);

struct ExperimentConfig {
  Config raw;
  std::vector<MethodSpec> methods;
  std::vector<std::uint64_t> seeds;
  /// Template for every cell; the seed is replaced per run.
  BoConfig bo;
  std::filesystem::path output;
  std::size_t workers = 1;
  bool record_timing = false;
  /// Also write trajectories/<method>__seed<k>.csv: one row per state of every
  /// AF-guided local search.
  bool trajectory_log = false;
  // fig1 protocol
  std::size_t fig1_runs = 100;
  std::uint64_t fig1_seed = 0;
};

/// Reads every experiment, solver and model knob from `config` and rejects unknown keys.
ExperimentConfig load_experiment(const Config& config);

struct AggregateRow {
  std::size_t iteration = 0;
  std::string method;
  double mean = 0.0;
  double stderr_ = 0.0;
  std::size_t runs = 0;
};

struct AggregateReport {
  std::vector<std::string> methods;
  std::vector<std::uint64_t> seeds;
  std::size_t iterations = 0;
  std::vector<AggregateRow> rows;
  std::vector<std::string> failures;

  bool ok() const noexcept { return failures.empty(); }
};

struct RunHistory {
  std::string method;
  std::uint64_t seed = 0;
  History history;
};

/// Mean and standard error of the incumbent per iteration and method.
AggregateReport aggregate(const std::vector<RunHistory>& runs,
                          const std::vector<std::string>& method_order);

void write_aggregate_csv(std::ostream& out, const AggregateReport& report);

/// History file name of one grid cell, relative to the output directory.
std::filesystem::path history_path(const std::string& method, std::uint64_t seed);

/// Runs benchmark x methods x seeds, writing history/*.csv, aggregate.csv and manifest.json.
AggregateReport run_experiment(const ExperimentConfig& config, std::ostream& log);

/// Re-reads history/*.csv under `dir` and rewrites aggregate.csv. Method order comes
/// from manifest.json when present, otherwise alphabetical.
AggregateReport aggregate_directory(const std::filesystem::path& dir);

/// Reads one history CSV back (objective and incumbent columns).
RunHistory read_history_csv(const std::filesystem::path& path, const std::string& method,
                            Direction direction);

struct Fig1Column {
  std::string name;
  std::vector<double> values;
};

struct Fig1PairStat {
  std::string a;
  std::string b;
  double median_a = 0.0;
  double median_b = 0.0;
  double u = 0.0;
  double z = 0.0;
  double p_value = 1.0;
};

struct Fig1Result {
  std::vector<Fig1Column> columns;
  std::vector<Fig1PairStat> stats;
};

/// Restart-strategy comparison on one frozen acquisition function: a scripted warm-up
/// (init_evals random evaluations + forest fit), then fig1_runs hill climbs per fixed
/// strategy and fig1_runs learned-restart iterations. Writes fig1.csv, fig1_stats.csv.
Fig1Result run_fig1_experiment(const ExperimentConfig& config, std::ostream& log);

/// Brute-force checks for the configured benchmark; writes oracle.csv. Returns false
/// when a check fails.
bool run_oracle(const ExperimentConfig& config, std::ostream& log);

}  // namespace l2s
