#include "l2s/afo.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "l2s/errors.hpp"

namespace l2s {
namespace {

// Memoises AF over one solver run and tracks the incumbent and first-visit order.
// AF is fixed for the duration of a run, so cached values never go stale.
class ScoredCache {
 public:
  explicit ScoredCache(const ScoreFn& af) : af_(af) {}

  double operator()(const Structure& x) {
    if (auto it = index_.find(x); it != index_.end()) return visited_[it->second].value;
    const double value = af_(x);
    index_.emplace(x, visited_.size());
    visited_.push_back({x, value});
    if (!best_ || value > visited_[*best_].value) best_ = visited_.size() - 1;
    return value;
  }

  bool has_best() const noexcept { return best_.has_value(); }
  double best_value() const { return visited_[*best_].value; }

  AfoOutcome finish(std::size_t restarts, std::vector<Trajectory> trajectories) && {
    AfoOutcome out;
    out.best_structure = visited_[*best_].structure;
    out.best_value = visited_[*best_].value;
    out.restarts_used = restarts;
    out.trajectories = std::move(trajectories);
    out.visited = std::move(visited_);
    return out;
  }

 private:
  const ScoreFn& af_;
  std::unordered_map<Structure, std::size_t, StructureHash> index_;
  std::vector<ScoredStructure> visited_;
  std::optional<std::size_t> best_;
};

}  // namespace

ImprovementRule parse_improvement_rule(std::string_view name) {
  if (name == "steepest") return ImprovementRule::steepest;
  if (name == "first") return ImprovementRule::first;
  throw ConfigError("unknown improvement rule '" + std::string(name) +
                    "' (expected steepest|first)");
}

LocalSearchResult hill_climb(const Structure& start, const ScoreFn& score,
                             const DiscreteSpace& space, const Neighborhood& kind,
                             ImprovementRule rule) {
  space.require_valid(start);
  LocalSearchResult result;
  Structure current = start;
  double current_value = score(current);
  result.trajectory.states.push_back(current);
  while (true) {
    const auto candidates = space.neighbors(current, kind);
    const Structure* next = nullptr;
    double next_value = current_value;
    for (const auto& y : candidates) {
      const double v = score(y);
      if (v > next_value) {
        next = &y;
        next_value = v;
        if (rule == ImprovementRule::first) break;
      }
    }
    if (!next) break;
    current = *next;
    current_value = next_value;
    result.trajectory.states.push_back(current);
    ++result.steps;
  }
  result.trajectory.value = current_value;
  result.end_value = current_value;
  return result;
}

AfoOutcome l2s_disco_afo(const ScoreFn& af, Ranker& ranker, const DiscreteSpace& space,
                         const Neighborhood& kind, const L2sConfig& config, Rng& rng,
                         L2sTrace* trace) {
  if (config.max_iters == 0) throw PreconditionError("l2s_disco_afo: max_iters must be >= 1");
  ScoredCache cache(af);
  const ScoreFn cached = [&cache](const Structure& x) { return cache(x); };
  const ScoreFn heuristic = [&ranker](const Structure& x) { return ranker.score(x); };

  std::vector<Trajectory> pool;
  std::unordered_set<Structure, StructureHash> used_starts;
  PairBuffer buffer;
  std::size_t stalled = 0;
  std::size_t restarts = 0;

  for (std::size_t iter = 0; iter < config.max_iters; ++iter) {
    const double incumbent_before = cache.has_best() ? cache.best_value() : -HUGE_VAL;

    // Pick the next start by climbing the learned heuristic from a random state.
    const Structure seed_state = space.sample_valid(rng);
    LocalSearchResult walk = hill_climb(seed_state, heuristic, space, kind, config.rule);
    for (const auto& s : walk.trajectory.states) cache(s);
    const Structure& restart = walk.trajectory.end();
    const bool reused = used_starts.contains(restart);
    const Structure start = reused ? space.sample_valid(rng) : restart;

    LocalSearchResult climb = hill_climb(start, cached, space, kind, config.rule);

    std::vector<RankingPair> fresh;
    for (const auto& earlier : pool) {
      auto pairs = generate_pairs(climb.trajectory, earlier, ranker.config().pair_cap, rng);
      if (pairs.empty()) continue;
      const double hi = std::max(climb.trajectory.value, earlier.value);
      const double lo = std::min(climb.trajectory.value, earlier.value);
      fresh.insert(fresh.end(), pairs.begin(), pairs.end());
      buffer.add(std::move(pairs), hi, lo);
    }
    double loss = 0.0;
    if (!fresh.empty()) loss = ranker.update(fresh, ranker.config().epochs, rng);

    used_starts.insert(start);
    ++restarts;
    if (trace) {
      trace->iterations.push_back({std::move(walk.trajectory), reused, start, climb.end_value,
                                   fresh.size(), loss});
    }
    pool.push_back(std::move(climb.trajectory));

    stalled = cache.best_value() > incumbent_before ? 0 : stalled + 1;
    if (config.stall_window != 0 && stalled >= config.stall_window) break;
    if (space.valid_count() && used_starts.size() >= *space.valid_count()) break;
  }
  if (trace) trace->pairs = std::move(buffer);
  return std::move(cache).finish(restarts, std::move(pool));
}

AfoOutcome random_restart_afo(const ScoreFn& af, const DiscreteSpace& space,
                              const Neighborhood& kind, std::size_t restarts, Rng& rng,
                              ImprovementRule rule) {
  if (restarts == 0) throw PreconditionError("random_restart_afo: restarts must be >= 1");
  ScoredCache cache(af);
  const ScoreFn cached = [&cache](const Structure& x) { return cache(x); };
  std::vector<Trajectory> trajectories;
  for (std::size_t r = 0; r < restarts; ++r) {
    const Structure start = space.sample_valid(rng);
    trajectories.push_back(hill_climb(start, cached, space, kind, rule).trajectory);
  }
  return std::move(cache).finish(restarts, std::move(trajectories));
}

std::string_view to_string(RestartStrategy strategy) noexcept {
  switch (strategy) {
    case RestartStrategy::random:
      return "random";
    case RestartStrategy::first_four_zero:
      return "first-four-zero";
    case RestartStrategy::last_four_one:
      return "last-four-one";
  }
  return "unknown";
}

Structure strategy_start(const DiscreteSpace& space, RestartStrategy strategy, Rng& rng) {
  if (!space.is_binary()) throw PreconditionError("fixed restart strategies need a binary space");
  if (space.dims() < 4) throw PreconditionError("fixed restart strategies need d >= 4");
  std::bernoulli_distribution coin(0.5);
  const std::size_t d = space.dims();
  for (std::size_t attempt = 0; attempt < DiscreteSpace::kRejectionBudget; ++attempt) {
    Structure x(d);
    for (std::size_t i = 0; i < d; ++i) x[i] = coin(rng) ? 1 : 0;
    if (strategy == RestartStrategy::first_four_zero)
      for (std::size_t i = 0; i < 4; ++i) x[i] = 0;
    if (strategy == RestartStrategy::last_four_one)
      for (std::size_t i = d - 4; i < d; ++i) x[i] = 1;
    if (space.is_valid(x)) return x;
  }
  throw SpaceTooConstrained("no valid start for restart strategy '" +
                            std::string(to_string(strategy)) + "'");
}

AfoOutcome fixed_strategy_afo(const ScoreFn& af, const DiscreteSpace& space,
                              const Neighborhood& kind, RestartStrategy strategy,
                              std::size_t restarts, Rng& rng, ImprovementRule rule) {
  if (restarts == 0) throw PreconditionError("fixed_strategy_afo: restarts must be >= 1");
  ScoredCache cache(af);
  const ScoreFn cached = [&cache](const Structure& x) { return cache(x); };
  std::vector<Trajectory> trajectories;
  for (std::size_t r = 0; r < restarts; ++r) {
    const Structure start = strategy_start(space, strategy, rng);
    trajectories.push_back(hill_climb(start, cached, space, kind, rule).trajectory);
  }
  return std::move(cache).finish(restarts, std::move(trajectories));
}

double metropolis_acceptance(double delta, double temperature) noexcept {
  if (delta >= 0.0) return 1.0;
  if (!(temperature > 0.0)) return 0.0;
  return std::exp(delta / temperature);
}

AfoOutcome simulated_annealing_afo(const ScoreFn& af, const DiscreteSpace& space,
                                   const Neighborhood& kind, const AnnealingSchedule& schedule,
                                   Rng& rng) {
  if (!(schedule.cooling_rate > 0.0 && schedule.cooling_rate <= 1.0))
    throw PreconditionError("simulated annealing: cooling rate must lie in (0, 1]");
  ScoredCache cache(af);
  Structure current = space.sample_valid(rng);
  double current_value = cache(current);
  Trajectory chain{{current}, current_value};
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double temperature = schedule.initial_temperature;
  for (std::size_t k = 0; k < schedule.proposals; ++k) {
    const auto candidates = space.neighbors(current, kind);
    if (candidates.empty()) break;
    std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
    const Structure& proposal = candidates[pick(rng)];
    const double value = cache(proposal);
    const double accept = metropolis_acceptance(value - current_value, temperature);
    if (accept >= 1.0 || unit(rng) < accept) {
      current = proposal;
      current_value = value;
      chain.states.push_back(current);
    }
    temperature *= schedule.cooling_rate;
  }
  chain.value = current_value;
  std::vector<Trajectory> trajectories;
  trajectories.push_back(std::move(chain));
  return std::move(cache).finish(1, std::move(trajectories));
}

AfoOutcome exhaustive_afo(const ScoreFn& af, const DiscreteSpace& space) {
  constexpr std::size_t kKeep = 64;
  std::vector<ScoredStructure> top;
  std::optional<ScoredStructure> best;
  space.for_each_valid([&](const Structure& x) {
    const double value = af(x);
    if (!best || value > best->value) best = ScoredStructure{x, value};
    if (top.size() < kKeep || value > top.back().value) {
      auto at = std::upper_bound(top.begin(), top.end(), value,
                                 [](double v, const ScoredStructure& s) { return v > s.value; });
      top.insert(at, {x, value});
      if (top.size() > kKeep) top.pop_back();
    }
  });
  if (!best) throw SpaceTooConstrained("exhaustive_afo: the space has no valid structure");
  AfoOutcome out;
  out.best_structure = best->structure;
  out.best_value = best->value;
  out.visited = std::move(top);
  return out;
}

}  // namespace l2s
