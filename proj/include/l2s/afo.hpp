#pragma once

// Acquisition function optimisers: arg max_x AF(M, x) over the valid structures.

#include <cstddef>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "l2s/ranker.hpp"
#include "l2s/space.hpp"

namespace l2s {

using ScoreFn = std::function<double(const Structure&)>;

enum class ImprovementRule { steepest, first };

ImprovementRule parse_improvement_rule(std::string_view name);

struct LocalSearchResult {
  Trajectory trajectory;
  double end_value = 0.0;
  std::size_t steps = 0;
};

struct ScoredStructure {
  Structure structure;
  double value = 0.0;
};

struct AfoOutcome {
  Structure best_structure;
  double best_value = 0.0;
  std::size_t restarts_used = 0;
  /// AF-guided local-search trajectories, in execution order.
  std::vector<Trajectory> trajectories;
  /// Distinct structures scored under AF, in first-visit order. exhaustive_afo keeps
  /// only its highest-scoring candidates here.
  std::vector<ScoredStructure> visited;
};

/// Local search to a local maximum of `score`. Steepest ascent moves to the best
/// neighbour when it is strictly better (first in neighbour order on ties); first
/// improvement takes the first strictly better neighbour. The trajectory holds every
/// visited state, start and end included, and its value is score(end).
LocalSearchResult hill_climb(const Structure& start, const ScoreFn& score,
                             const DiscreteSpace& space, const Neighborhood& kind,
                             ImprovementRule rule = ImprovementRule::steepest);

struct L2sConfig {
  std::size_t max_iters = 60;
  /// Stop after this many consecutive restarts without a better incumbent; 0 disables.
  std::size_t stall_window = 10;
  ImprovementRule rule = ImprovementRule::steepest;
};

/// Per-restart record of an l2s_disco_afo run.
struct L2sIteration {
  Trajectory heuristic_walk;  // guided by H(theta, x)
  bool restart_reused = false;
  Structure start;
  double end_value = 0.0;
  std::size_t new_pairs = 0;
  double ranker_loss = 0.0;
};

struct L2sTrace {
  std::vector<L2sIteration> iterations;
  /// All ranking pairs generated during the run (discarded by the solver afterwards).
  PairBuffer pairs;
};

/// Local search with restarts chosen by a learned heuristic, updated online by
/// bipartite rank learning over the run's trajectories. `ranker` is read and
/// updated in place so its parameters carry over to the next BO iteration.
AfoOutcome l2s_disco_afo(const ScoreFn& af, Ranker& ranker, const DiscreteSpace& space,
                         const Neighborhood& kind, const L2sConfig& config, Rng& rng,
                         L2sTrace* trace = nullptr);

/// Independent hill climbs from uniform random valid starts.
AfoOutcome random_restart_afo(const ScoreFn& af, const DiscreteSpace& space,
                              const Neighborhood& kind, std::size_t restarts, Rng& rng,
                              ImprovementRule rule = ImprovementRule::steepest);

enum class RestartStrategy { random, first_four_zero, last_four_one };

std::string_view to_string(RestartStrategy strategy) noexcept;

/// Random valid start with the strategy's clamped positions (binary spaces, d >= 4).
Structure strategy_start(const DiscreteSpace& space, RestartStrategy strategy, Rng& rng);

/// Hill climbs from starts drawn by a fixed restart strategy.
AfoOutcome fixed_strategy_afo(const ScoreFn& af, const DiscreteSpace& space,
                              const Neighborhood& kind, RestartStrategy strategy,
                              std::size_t restarts, Rng& rng,
                              ImprovementRule rule = ImprovementRule::steepest);

struct AnnealingSchedule {
  double initial_temperature = 1.0;
  double cooling_rate = 0.995;
  std::size_t proposals = 2000;
};

/// Metropolis acceptance probability of a move changing the score by `delta`.
double metropolis_acceptance(double delta, double temperature) noexcept;

/// Single-chain simulated annealing with geometric cooling; returns the best state seen.
AfoOutcome simulated_annealing_afo(const ScoreFn& af, const DiscreteSpace& space,
                                   const Neighborhood& kind, const AnnealingSchedule& schedule,
                                   Rng& rng);

/// Exact arg max over an enumerable space; the lexicographically first maximiser wins.
AfoOutcome exhaustive_afo(const ScoreFn& af, const DiscreteSpace& space);

}  // namespace l2s
