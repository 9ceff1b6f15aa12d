#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "l2s/acquisition.hpp"
#include "l2s/afo.hpp"
#include "l2s/objective.hpp"
#include "l2s/ranker.hpp"
#include "l2s/surrogate.hpp"

namespace l2s {

enum class AfoSolver { l2s_disco, random_restart, simulated_annealing, exhaustive };

std::string_view to_string(AfoSolver solver) noexcept;
AfoSolver parse_afo_solver(std::string_view name);

struct BoConfig {
  std::size_t init_evals = 20;
  /// Total expensive evaluations, initialisation included.
  std::size_t budget = 250;
  AcquisitionConfig acquisition;
  AfoSolver solver = AfoSolver::l2s_disco;
  ForestConfig forest;
  RankerConfig ranker;
  L2sConfig l2s;
  std::size_t restarts = 60;
  ImprovementRule rule = ImprovementRule::steepest;
  AnnealingSchedule annealing;
  std::uint64_t seed = 0;
};

enum class Phase { init, bo };

struct EvaluationRecord {
  std::size_t iteration = 0;  // 1-based evaluation index
  Phase phase = Phase::init;
  Structure structure;
  double value = 0.0;
  double incumbent = 0.0;  // best so far, native direction
  double elapsed_ms = 0.0;
};

struct History {
  Direction direction = Direction::maximize;
  std::vector<EvaluationRecord> records;
  /// Set when the run aborted; records hold everything evaluated before the failure.
  std::optional<std::string> error;

  std::size_t size() const noexcept { return records.size(); }
  bool ok() const noexcept { return !error.has_value(); }
  std::vector<double> incumbent_trace() const;
  double final_incumbent() const;
};

/// Per-iteration hook for instrumentation and tests.
struct BoIterationInfo {
  std::size_t bo_iteration = 0;       // 1-based, counts iterations after initialisation
  std::size_t training_size = 0;      // records the surrogate was fitted on
  const AfoOutcome* outcome = nullptr;
  const Ranker* ranker = nullptr;     // state after this iteration's AFO (l2s only)
  Structure proposed;                 // structure passed to the objective
  bool deduplicated = false;          // proposal replaced because it was already evaluated
};
using BoObserver = std::function<void(const BoIterationInfo&)>;

/// Bayesian optimisation: init_evals distinct random evaluations, then
/// fit surrogate -> optimise acquisition -> evaluate -> aggregate until the budget is spent.
History run_bo(const Objective& objective, const BoConfig& config,
               const BoObserver& observer = {});

/// `budget` distinct uniform valid structures.
History run_random_search(const Objective& objective, std::size_t budget, std::uint64_t seed);

/// CSV columns: seed,iteration,phase,structure,objective,incumbent,elapsed_ms.
/// elapsed_ms is left empty unless `with_timing`, keeping reruns byte-identical.
void write_history_csv(std::ostream& out, const History& history, std::uint64_t seed,
                       bool with_timing);

}  // namespace l2s
