#include "l2s/bo.hpp"

#include <chrono>
#include <cmath>
#include <ostream>
#include <unordered_set>

#include "l2s/errors.hpp"
#include "l2s/text.hpp"

namespace l2s {
namespace {

using Clock = std::chrono::steady_clock;

Rng seeded(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream)};
  return Rng(seq);
}

class Recorder {
 public:
  Recorder(const Objective& objective, History& history)
      : objective_(objective), history_(history) {
    history_.direction = objective.direction();
  }

  bool evaluated(const Structure& x) const { return seen_.contains(x); }
  std::size_t count() const noexcept { return history_.records.size(); }

  // Evaluates x and appends a record. Failures are stored in the history and reported as false.
  bool evaluate(const Structure& x, Phase phase, Clock::time_point started) {
    double value = 0.0;
    try {
      value = objective_.evaluate(x);
    } catch (const std::exception& e) {
      history_.error = "evaluation " + std::to_string(count() + 1) + " of '" + x.to_string() +
                       "' failed: " + e.what();
      return false;
    }
    if (!std::isfinite(value)) {
      history_.error = "evaluation " + std::to_string(count() + 1) + " of '" + x.to_string() +
                       "' returned a non-finite value";
      return false;
    }
    const double incumbent = history_.records.empty() ||
                                     improves(history_.direction, value,
                                              history_.records.back().incumbent)
                                 ? value
                                 : history_.records.back().incumbent;
    const double elapsed =
        std::chrono::duration<double, std::milli>(Clock::now() - started).count();
    history_.records.push_back({count() + 1, phase, x, value, incumbent, elapsed});
    seen_.insert(x);
    return true;
  }

  // Distinct random valid structure not evaluated yet.
  std::optional<Structure> fresh_random(Rng& rng) const {
    const std::size_t attempts = 100 * (count() + 1) + 1000;
    for (std::size_t i = 0; i < attempts; ++i) {
      Structure x = objective_.space().sample_valid(rng);
      if (!seen_.contains(x)) return x;
    }
    return std::nullopt;
  }

 private:
  const Objective& objective_;
  History& history_;
  std::unordered_set<Structure, StructureHash> seen_;
};

bool initialise(std::size_t count, Rng& rng, Recorder& recorder, History& history) {
  while (recorder.count() < count) {
    const auto started = Clock::now();
    std::optional<Structure> x;
    try {
      x = recorder.fresh_random(rng);
    } catch (const std::exception& e) {
      history.error = std::string("initial sampling failed: ") + e.what();
      return false;
    }
    if (!x) {
      history.error = "initial sampling could not find an unevaluated valid structure";
      return false;
    }
    if (!recorder.evaluate(*x, Phase::init, started)) return false;
  }
  return true;
}

}  // namespace

std::string_view to_string(AfoSolver solver) noexcept {
  switch (solver) {
    case AfoSolver::l2s_disco:
      return "l2s-disco";
    case AfoSolver::random_restart:
      return "random-restart";
    case AfoSolver::simulated_annealing:
      return "simulated-annealing";
    case AfoSolver::exhaustive:
      return "exhaustive";
  }
  return "unknown";
}

AfoSolver parse_afo_solver(std::string_view name) {
  if (name == "l2s-disco") return AfoSolver::l2s_disco;
  if (name == "random-restart") return AfoSolver::random_restart;
  if (name == "simulated-annealing") return AfoSolver::simulated_annealing;
  if (name == "exhaustive") return AfoSolver::exhaustive;
  throw ConfigError("unknown AFO solver '" + std::string(name) + "'");
}

std::vector<double> History::incumbent_trace() const {
  std::vector<double> trace;
  trace.reserve(records.size());
  for (const auto& r : records) trace.push_back(r.incumbent);
  return trace;
}

double History::final_incumbent() const {
  if (records.empty()) throw PreconditionError("History::final_incumbent: empty history");
  return records.back().incumbent;
}

History run_bo(const Objective& objective, const BoConfig& config, const BoObserver& observer) {
  if (config.init_evals < 1) throw PreconditionError("run_bo: init_evals must be >= 1");
  if (config.budget < config.init_evals)
    throw PreconditionError("run_bo: budget must be >= init_evals");

  History history;
  Recorder recorder(objective, history);
  Rng rng = seeded(config.seed, 0x6c3273);
  if (!initialise(config.init_evals, rng, recorder, history)) return history;

  const DiscreteSpace& space = objective.space();
  const double sign = objective.direction() == Direction::maximize ? 1.0 : -1.0;
  RankerConfig ranker_config = config.ranker;
  ranker_config.init_seed = rng() ^ config.ranker.init_seed;
  Ranker ranker(space.domain_sizes(), ranker_config);

  TrainingSet data;
  for (const auto& r : history.records) data.add(r.structure, sign * r.value);

  for (std::size_t t = 1; recorder.count() < config.budget; ++t) {
    const auto started = Clock::now();
    const std::size_t training_size = data.size();
    const RandomForest forest = RandomForest::fit(data, space.domain_sizes(), config.forest, rng());
    double incumbent = data.targets.front();
    for (double y : data.targets) incumbent = std::max(incumbent, y);
    const AcquisitionFunction acquisition(forest, incumbent, t, config.acquisition,
                                          space.log_cardinality());
    const ScoreFn af = [&acquisition](const Structure& x) { return acquisition(x); };
    Rng afo_rng(rng());

    AfoOutcome outcome;
    try {
      switch (config.solver) {
        case AfoSolver::l2s_disco:
          outcome = l2s_disco_afo(af, ranker, space, objective.neighborhood(), config.l2s, afo_rng);
          break;
        case AfoSolver::random_restart:
          outcome = random_restart_afo(af, space, objective.neighborhood(), config.restarts,
                                       afo_rng, config.rule);
          break;
        case AfoSolver::simulated_annealing:
          outcome = simulated_annealing_afo(af, space, objective.neighborhood(), config.annealing,
                                            afo_rng);
          break;
        case AfoSolver::exhaustive:
          outcome = exhaustive_afo(af, space);
          break;
      }
    } catch (const std::exception& e) {
      history.error = "acquisition optimisation failed at BO iteration " + std::to_string(t) +
                      ": " + e.what();
      return history;
    }

    Structure proposal = outcome.best_structure;
    bool deduplicated = false;
    if (recorder.evaluated(proposal)) {
      deduplicated = true;
      const ScoredStructure* best_fresh = nullptr;
      for (const auto& v : outcome.visited)
        if (!recorder.evaluated(v.structure) && (!best_fresh || v.value > best_fresh->value))
          best_fresh = &v;
      if (best_fresh) {
        proposal = best_fresh->structure;
      } else {
        auto fallback = recorder.fresh_random(afo_rng);
        if (!fallback) {
          history.error = "no unevaluated valid structure left at BO iteration " +
                          std::to_string(t);
          return history;
        }
        proposal = std::move(*fallback);
      }
    }

    if (observer) {
      const bool l2s = config.solver == AfoSolver::l2s_disco;
      observer({t, training_size, &outcome, l2s ? &ranker : nullptr, proposal, deduplicated});
    }
    if (!recorder.evaluate(proposal, Phase::bo, started)) return history;
    data.add(proposal, sign * history.records.back().value);
  }
  return history;
}

History run_random_search(const Objective& objective, std::size_t budget, std::uint64_t seed) {
  if (budget < 1) throw PreconditionError("run_random_search: budget must be >= 1");
  History history;
  Recorder recorder(objective, history);
  Rng rng = seeded(seed, 0x72616e64);
  initialise(budget, rng, recorder, history);
  return history;
}

void write_history_csv(std::ostream& out, const History& history, std::uint64_t seed,
                       bool with_timing) {
  out << "seed,iteration,phase,structure,objective,incumbent,elapsed_ms\n";
  for (const auto& r : history.records) {
    out << seed << ',' << r.iteration << ',' << (r.phase == Phase::init ? "init" : "bo") << ','
        << r.structure.to_string() << ',' << format_double(r.value) << ','
        << format_double(r.incumbent) << ',';
    if (with_timing) out << format_double(r.elapsed_ms);
    out << '\n';
  }
}

}  // namespace l2s
