#include "l2s/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <map>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>
#include <thread>
#include <unordered_map>

#include <json.hpp>

#include "l2s/errors.hpp"
#include "l2s/simd/kernels.hpp"
#include "l2s/stats.hpp"
#include "l2s/text.hpp"

namespace l2s {
namespace fs = std::filesystem;

namespace {

BetaParams beta_param(const Config& c, const std::string& key, BetaParams fallback) {
  if (!c.has(key)) return fallback;
  const auto parts = c.get_list(key);
  if (parts.size() != 2) throw ConfigError("config key '" + key + "': expected 'alpha, beta'");
  Config pair;
  pair.set("alpha", parts[0]);
  pair.set("beta", parts[1]);
  return {pair.get_double("alpha", 0.0), pair.get_double("beta", 0.0)};
}

std::ofstream open_for_write(const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write '" + path.string() + "'");
  return out;
}

void ensure_directory(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir))
    throw ConfigError("cannot create output directory '" + dir.string() + "'");
}

Rng stream_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), 0x66696731u};
  return Rng(seq);
}

void write_trajectories(std::ostream& out, const BoIterationInfo& info) {
  std::unordered_map<Structure, double, StructureHash> af;
  for (const auto& v : info.outcome->visited) af.emplace(v.structure, v.value);
  const auto& trajectories = info.outcome->trajectories;
  for (std::size_t r = 0; r < trajectories.size(); ++r) {
    const auto& states = trajectories[r].states;
    for (std::size_t k = 0; k < states.size(); ++k) {
      const auto it = af.find(states[k]);
      out << info.bo_iteration << ',' << r + 1 << ',' << k << ',' << states[k].to_string() << ','
          << (it != af.end() ? format_double(it->second) : std::string()) << '\n';
    }
  }
}

}  // namespace

MethodSpec parse_method(const std::string& name) {
  MethodSpec spec;
  spec.name = name;
  if (name == "random-search") {
    spec.random_search = true;
    return spec;
  }
  std::string base = name;
  AcquisitionKind kind = AcquisitionKind::ucb;
  bool explicit_kind = false;
  for (const auto& [suffix, k] :
       {std::pair{std::string("-ucb"), AcquisitionKind::ucb}, {std::string("-ei"), AcquisitionKind::ei}}) {
    if (base.size() > suffix.size() && base.ends_with(suffix)) {
      base.resize(base.size() - suffix.size());
      kind = k;
      explicit_kind = true;
      break;
    }
  }
  spec.acquisition = kind;
  if (base == "l2s-disco" && explicit_kind) {
    spec.solver = AfoSolver::l2s_disco;
  } else if (base == "rr-local-search") {
    spec.solver = AfoSolver::random_restart;
  } else if (base == "sim-anneal") {
    spec.solver = AfoSolver::simulated_annealing;
  } else if (base == "exhaustive" && explicit_kind) {
    spec.solver = AfoSolver::exhaustive;
  } else {
    throw ConfigError("unknown method '" + name +
                      "' (expected l2s-disco-ucb, l2s-disco-ei, rr-local-search, sim-anneal, "
                      "exhaustive-ucb, exhaustive-ei or random-search)");
  }
  return spec;
}

std::unique_ptr<Objective> make_objective(const Config& c) {
  const std::string name = c.get_string("benchmark.name");
  const std::uint64_t seed = c.get_u64("benchmark.seed", 0);
  if (name == "labs") {
    return std::make_unique<LabsObjective>(LabsInstance{c.get_size("benchmark.n", 30)});
  }
  if (name == "contamination") {
    ContaminationParams p;
    p.stages = c.get_size("benchmark.stages", p.stages);
    p.samples = c.get_size("benchmark.samples", p.samples);
    p.penalty = c.get_double("benchmark.penalty", p.penalty);
    p.reg = c.get_double("benchmark.reg", p.reg);
    p.limit = c.get_double("benchmark.limit", p.limit);
    p.cost = c.get_double("benchmark.cost", p.cost);
    p.initial = beta_param(c, "benchmark.initial_beta", p.initial);
    p.spread = beta_param(c, "benchmark.spread_beta", p.spread);
    p.decay = beta_param(c, "benchmark.decay_beta", p.decay);
    p.seed = seed;
    return std::make_unique<ContaminationObjective>(p);
  }
  if (name == "ising") {
    IsingParams p;
    p.rows = c.get_size("benchmark.rows", p.rows);
    p.cols = c.get_size("benchmark.cols", p.cols);
    p.coupling_min = c.get_double("benchmark.coupling_min", p.coupling_min);
    p.coupling_max = c.get_double("benchmark.coupling_max", p.coupling_max);
    p.reg = c.get_double("benchmark.reg", p.reg);
    p.seed = seed;
    return std::make_unique<IsingObjective>(p);
  }
  if (name == "synthetic") {
    SyntheticParams p;
    p.dims = c.get_size("benchmark.dims", p.dims);
    p.values = c.get_size("benchmark.values", p.values);
    p.triples = c.get_size("benchmark.triples", p.triples);
    p.seed = seed;
    return std::make_unique<SyntheticConstrainedObjective>(p);
  }
  throw ConfigError("unknown benchmark '" + name +
                    "' (expected labs, contamination, ising or synthetic)");
}

ExperimentConfig load_experiment(const Config& config) {
  ExperimentConfig e;
  e.raw = config;
  const Config& c = e.raw;
  make_objective(c);  // validates and marks the benchmark keys

  for (const auto& m : c.get_list("experiment.methods")) e.methods.push_back(parse_method(m));
  e.seeds = c.get_u64_list("experiment.seeds");
  if (e.methods.empty()) throw ConfigError("experiment.methods must name at least one method");
  if (e.seeds.empty()) throw ConfigError("experiment.seeds must list at least one seed");

  BoConfig& bo = e.bo;
  bo.budget = c.get_size("experiment.budget", bo.budget);
  bo.init_evals = c.get_size("experiment.init_evals", bo.init_evals);
  if (bo.init_evals < 1) throw ConfigError("experiment.init_evals must be >= 1");
  if (bo.budget < bo.init_evals) throw ConfigError("experiment.budget must be >= init_evals");
  bo.acquisition.delta = c.get_double("acquisition.delta", bo.acquisition.delta);
  bo.forest.trees = c.get_size("forest.trees", bo.forest.trees);
  bo.forest.max_depth = c.get_size("forest.max_depth", bo.forest.max_depth);
  bo.forest.min_samples_leaf = c.get_size("forest.min_samples_leaf", bo.forest.min_samples_leaf);
  bo.ranker.hidden = c.get_size("ranker.hidden", bo.ranker.hidden);
  bo.ranker.step_size = c.get_double("ranker.step_size", bo.ranker.step_size);
  bo.ranker.epochs = c.get_size("ranker.epochs", bo.ranker.epochs);
  bo.ranker.pair_cap = c.get_size("ranker.pair_cap", bo.ranker.pair_cap);
  bo.ranker.init_scale = c.get_double("ranker.init_scale", bo.ranker.init_scale);
  bo.ranker.init_seed = c.get_u64("ranker.init_seed", bo.ranker.init_seed);
  bo.l2s.max_iters = c.get_size("l2s.max_iters", bo.l2s.max_iters);
  bo.l2s.stall_window = c.get_size("l2s.stall_window", bo.l2s.stall_window);
  bo.rule = parse_improvement_rule(c.get_string("search.rule", "steepest"));
  bo.l2s.rule = bo.rule;
  bo.restarts = c.get_size("rr.restarts", bo.restarts);
  bo.annealing.initial_temperature = c.get_double("sa.t0", bo.annealing.initial_temperature);
  bo.annealing.cooling_rate = c.get_double("sa.cooling_rate", bo.annealing.cooling_rate);
  bo.annealing.proposals = c.get_size("sa.proposals", bo.annealing.proposals);

  e.output = c.get_string("experiment.output", "out");
  e.workers = std::max<std::size_t>(1, c.get_size("experiment.workers", 1));
  e.record_timing = c.get_bool("experiment.record_timing", false);
  e.trajectory_log = c.get_bool("experiment.trajectory_log", false);
  e.fig1_runs = c.get_size("fig1.runs", e.fig1_runs);
  e.fig1_seed = c.get_u64("fig1.seed", e.fig1_seed);
  // Read here so it counts as known; applied by the CLI.
  c.get_string("kernels.backend", "auto");
  c.get_string("fig1.acquisition", "ucb");

  const auto unused = c.unused_keys();
  if (!unused.empty()) {
    std::string list;
    for (const auto& k : unused) list += (list.empty() ? "" : ", ") + k;
    throw ConfigError("unknown config keys: " + list);
  }
  return e;
}

fs::path history_path(const std::string& method, std::uint64_t seed) {
  return fs::path("history") / (method + "__seed" + std::to_string(seed) + ".csv");
}

AggregateReport aggregate(const std::vector<RunHistory>& runs,
                          const std::vector<std::string>& method_order) {
  AggregateReport report;
  report.methods = method_order;
  std::map<std::string, std::vector<const RunHistory*>> by_method;
  for (const auto& run : runs) {
    by_method[run.method].push_back(&run);
    report.iterations = std::max(report.iterations, run.history.size());
    if (std::find(report.seeds.begin(), report.seeds.end(), run.seed) == report.seeds.end())
      report.seeds.push_back(run.seed);
  }
  std::sort(report.seeds.begin(), report.seeds.end());
  for (std::size_t k = 0; k < report.iterations; ++k) {
    for (const auto& method : report.methods) {
      std::vector<double> values;
      for (const auto* run : by_method[method])
        if (k < run->history.size()) values.push_back(run->history.records[k].incumbent);
      if (values.empty()) continue;
      report.rows.push_back({k + 1, method, mean(values), standard_error(values), values.size()});
    }
  }
  return report;
}

void write_aggregate_csv(std::ostream& out, const AggregateReport& report) {
  out << "iteration,method,mean_incumbent,stderr,runs\n";
  for (const auto& r : report.rows)
    out << r.iteration << ',' << r.method << ',' << format_double(r.mean) << ','
        << format_double(r.stderr_) << ',' << r.runs << '\n';
}

namespace {

void write_manifest(const fs::path& dir, const ExperimentConfig& config,
                    const AggregateReport& report, const Objective& objective) {
  nlohmann::ordered_json manifest;
  manifest["config_hash"] = config.raw.hash_hex();
  manifest["config"] = config.raw.entries();
  manifest["benchmark"] = objective.name();
  manifest["benchmark_parameters"] = objective.parameters();
  manifest["direction"] = std::string(to_string(objective.direction()));
  std::vector<std::string> methods;
  for (const auto& m : config.methods) methods.push_back(m.name);
  manifest["methods"] = methods;
  manifest["seeds"] = config.seeds;
  manifest["budget"] = config.bo.budget;
  manifest["init_evals"] = config.bo.init_evals;
  manifest["kernels"] = std::string(simd::backend_name(simd::active().backend));
  manifest["failures"] = report.failures;
  auto out = open_for_write(dir / "manifest.json");
  out << manifest.dump(2) << '\n';
}

}  // namespace

AggregateReport run_experiment(const ExperimentConfig& config, std::ostream& log) {
  const auto objective = make_objective(config.raw);
  ensure_directory(config.output / "history");
  if (config.trajectory_log) ensure_directory(config.output / "trajectories");

  struct Cell {
    const MethodSpec* method;
    std::uint64_t seed;
  };
  std::vector<Cell> cells;
  for (const auto& m : config.methods)
    for (auto s : config.seeds) cells.push_back({&m, s});

  std::vector<RunHistory> results(cells.size());
  std::vector<std::string> errors(cells.size());
  std::atomic<std::size_t> next{0};
  std::mutex log_mutex;

  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      const Cell& cell = cells[i];
      RunHistory& run = results[i];
      run.method = cell.method->name;
      run.seed = cell.seed;
      try {
        if (cell.method->random_search) {
          run.history = run_random_search(*objective, config.bo.budget, cell.seed);
        } else {
          BoConfig bo = config.bo;
          bo.seed = cell.seed;
          bo.solver = cell.method->solver;
          bo.acquisition.kind = cell.method->acquisition;
          BoObserver observer;
          std::ofstream trajectories;
          if (config.trajectory_log) {
            const fs::path path = config.output / "trajectories" / history_path(run.method, run.seed).filename();
            trajectories = open_for_write(path);
            trajectories << "run,restart,step,structure,af\n";
            observer = [&trajectories](const BoIterationInfo& info) {
              write_trajectories(trajectories, info);
            };
          }
          run.history = run_bo(*objective, bo, observer);
        }
        auto out = open_for_write(config.output / history_path(run.method, run.seed));
        write_history_csv(out, run.history, run.seed, config.record_timing);
        if (!run.history.ok()) errors[i] = *run.history.error;
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
      std::lock_guard lock(log_mutex);
      log << "[" << (i + 1) << "/" << cells.size() << "] " << run.method << " seed " << run.seed;
      if (errors[i].empty() && run.history.size() > 0)
        log << " final incumbent " << format_double(run.history.final_incumbent()) << '\n';
      else
        log << " FAILED: " << errors[i] << '\n';
    }
  };
  const std::size_t threads = std::min(config.workers, cells.size());
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::vector<RunHistory> complete;
  std::vector<std::string> failures;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (errors[i].empty())
      complete.push_back(std::move(results[i]));
    else
      failures.push_back(cells[i].method->name + " seed " + std::to_string(cells[i].seed) + ": " +
                         errors[i]);
  }
  std::vector<std::string> order;
  for (const auto& m : config.methods) order.push_back(m.name);
  AggregateReport report = aggregate(complete, order);
  report.failures = std::move(failures);
  {
    auto out = open_for_write(config.output / "aggregate.csv");
    write_aggregate_csv(out, report);
  }
  write_manifest(config.output, config, report, *objective);
  return report;
}

RunHistory read_history_csv(const fs::path& path, const std::string& method, Direction direction) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read history file '" + path.string() + "'");
  RunHistory run;
  run.method = method;
  run.history.direction = direction;
  std::string line;
  std::getline(in, line);
  if (trim(line) != "seed,iteration,phase,structure,objective,incumbent,elapsed_ms")
    throw ConfigError("'" + path.string() + "' is not a history CSV");
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 7) throw ConfigError("'" + path.string() + "': malformed row '" + line + "'");
    Config row;  // reuse the checked number parsing
    row.set("seed", f[0]);
    row.set("iteration", f[1]);
    row.set("objective", f[4]);
    row.set("incumbent", f[5]);
    EvaluationRecord r;
    run.seed = row.get_u64("seed", 0);
    r.iteration = row.get_size("iteration", 0);
    r.phase = f[2] == "init" ? Phase::init : Phase::bo;
    r.structure = Structure::parse(f[3]);
    r.value = row.get_double("objective", 0.0);
    r.incumbent = row.get_double("incumbent", 0.0);
    if (!f[6].empty()) {
      row.set("elapsed", f[6]);
      r.elapsed_ms = row.get_double("elapsed", 0.0);
    }
    run.history.records.push_back(std::move(r));
  }
  return run;
}

AggregateReport aggregate_directory(const fs::path& dir) {
  const fs::path history_dir = dir / "history";
  if (!fs::is_directory(history_dir))
    throw ConfigError("'" + dir.string() + "' has no history/ directory");

  std::vector<std::string> order;
  Direction direction = Direction::maximize;
  if (std::ifstream manifest_in(dir / "manifest.json"); manifest_in) {
    const auto manifest = nlohmann::json::parse(manifest_in);
    order = manifest.at("methods").get<std::vector<std::string>>();
    if (manifest.at("direction").get<std::string>() == "minimize") direction = Direction::minimize;
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(history_dir))
    if (entry.path().extension() == ".csv") files.push_back(entry.path());
  std::sort(files.begin(), files.end());

  std::vector<RunHistory> runs;
  std::vector<std::string> seen_methods;
  for (const auto& file : files) {
    const std::string stem = file.stem().string();
    const auto sep = stem.rfind("__seed");
    if (sep == std::string::npos) continue;
    const std::string method = stem.substr(0, sep);
    runs.push_back(read_history_csv(file, method, direction));
    if (std::find(seen_methods.begin(), seen_methods.end(), method) == seen_methods.end())
      seen_methods.push_back(method);
  }
  if (runs.empty()) throw ConfigError("no history files under '" + history_dir.string() + "'");
  if (order.empty()) {
    order = seen_methods;
    std::sort(order.begin(), order.end());
  }
  AggregateReport report = aggregate(runs, order);
  auto out = open_for_write(dir / "aggregate.csv");
  write_aggregate_csv(out, report);
  return report;
}

Fig1Result run_fig1_experiment(const ExperimentConfig& config, std::ostream& log) {
  const auto objective = make_objective(config.raw);
  const DiscreteSpace& space = objective->space();
  if (!space.is_binary()) throw PreconditionError("fig1 needs a binary benchmark");
  if (config.fig1_runs == 0) throw ConfigError("fig1.runs must be >= 1");
  ensure_directory(config.output);

  // Scripted warm-up: random evaluations, one forest, AF frozen at BO iteration 1.
  const History warmup = run_random_search(*objective, config.bo.init_evals, config.fig1_seed);
  if (!warmup.ok()) throw PreconditionError("fig1 warm-up failed: " + *warmup.error);
  const double sign = objective->direction() == Direction::maximize ? 1.0 : -1.0;
  TrainingSet data;
  for (const auto& r : warmup.records) data.add(r.structure, sign * r.value);
  Rng model_rng = stream_rng(config.fig1_seed, 100);
  const RandomForest forest =
      RandomForest::fit(data, space.domain_sizes(), config.bo.forest, model_rng());
  double incumbent = data.targets.front();
  for (double y : data.targets) incumbent = std::max(incumbent, y);
  AcquisitionConfig acq = config.bo.acquisition;
  acq.kind = parse_acquisition_kind(config.raw.get_string("fig1.acquisition", "ucb"));
  const AcquisitionFunction af_state(forest, incumbent, 1, acq, space.log_cardinality());
  const ScoreFn af = [&af_state](const Structure& x) { return af_state(x); };

  Fig1Result result;
  const RestartStrategy strategies[] = {RestartStrategy::random, RestartStrategy::first_four_zero,
                                        RestartStrategy::last_four_one};
  for (std::size_t s = 0; s < 3; ++s) {
    Rng rng = stream_rng(config.fig1_seed, s + 1);
    Fig1Column column{std::string(to_string(strategies[s])), {}};
    for (std::size_t run = 0; run < config.fig1_runs; ++run) {
      const AfoOutcome o = fixed_strategy_afo(af, space, objective->neighborhood(), strategies[s],
                                              1, rng, config.bo.rule);
      column.values.push_back(o.trajectories.front().value);
    }
    result.columns.push_back(std::move(column));
  }
  {
    Rng rng = stream_rng(config.fig1_seed, 4);
    RankerConfig rc = config.bo.ranker;
    rc.init_seed = rng();
    Ranker ranker(space.domain_sizes(), rc);
    L2sConfig l2s = config.bo.l2s;
    l2s.max_iters = config.fig1_runs;
    l2s.stall_window = 0;
    L2sTrace trace;
    l2s_disco_afo(af, ranker, space, objective->neighborhood(), l2s, rng, &trace);
    Fig1Column column{"l2s-disco", {}};
    for (const auto& it : trace.iterations) column.values.push_back(it.end_value);
    result.columns.push_back(std::move(column));
  }

  for (std::size_t a = 0; a < result.columns.size(); ++a) {
    for (std::size_t b = a + 1; b < result.columns.size(); ++b) {
      const auto& ca = result.columns[a];
      const auto& cb = result.columns[b];
      const MannWhitneyResult mw = mann_whitney(ca.values, cb.values);
      result.stats.push_back(
          {ca.name, cb.name, median(ca.values), median(cb.values), mw.u, mw.z, mw.p_value});
    }
  }

  {
    auto out = open_for_write(config.output / "fig1.csv");
    out << "run";
    for (const auto& c : result.columns) out << ',' << c.name;
    out << '\n';
    for (std::size_t r = 0; r < config.fig1_runs; ++r) {
      out << r + 1;
      for (const auto& c : result.columns) out << ',' << format_double(c.values[r]);
      out << '\n';
    }
  }
  {
    auto out = open_for_write(config.output / "fig1_stats.csv");
    out << "strategy_a,strategy_b,median_a,median_b,u,z,p_value\n";
    for (const auto& s : result.stats)
      out << s.a << ',' << s.b << ',' << format_double(s.median_a) << ','
          << format_double(s.median_b) << ',' << format_double(s.u) << ',' << format_double(s.z)
          << ',' << format_double(s.p_value) << '\n';
  }
  for (const auto& s : result.stats)
    log << s.a << " vs " << s.b << ": medians " << format_double(s.median_a) << " / "
        << format_double(s.median_b) << ", U=" << format_double(s.u)
        << ", p=" << format_double(s.p_value) << '\n';
  return result;
}

bool run_oracle(const ExperimentConfig& config, std::ostream& log) {
  const auto objective = make_objective(config.raw);
  ensure_directory(config.output);
  struct Check {
    std::string name;
    std::string value;
    std::string expected;
    bool pass;
  };
  std::vector<Check> checks;
  const DiscreteSpace& space = objective->space();

  if (const auto best = objective->best_known()) {
    checks.push_back({"exhaustive_optimum", format_double(*best), "", true});
    checks.push_back({"exhaustive_argmax", objective->best_known_structure()->to_string(), "", true});
  } else {
    checks.push_back({"exhaustive_optimum", "absent", "", true});
  }

  if (const auto* labs = dynamic_cast<const LabsObjective*>(objective.get())) {
    if (const auto s = labs->best_known_structure()) {
      const auto spins = to_spins(*s);
      const auto energy = labs_energy(spins);
      const auto n = static_cast<std::int64_t>(labs->instance().length);
      checks.push_back({"min_sidelobe_energy", std::to_string(energy), "", true});
      checks.push_back({"optimum_fraction", std::to_string(n * n) + "/" + std::to_string(energy),
                        "", true});
    }
  }
  if (const auto* ising = dynamic_cast<const IsingObjective*>(objective.get())) {
    const auto& inst = ising->instance();
    // Independent straight loop over spin configurations.
    double top = -HUGE_VAL;
    std::vector<double> energies(std::size_t{1} << inst.nodes);
    for (std::size_t s = 0; s < energies.size(); ++s) {
      double e = 0.0;
      for (std::size_t k = 0; k < inst.edges.size(); ++k) {
        const int za = (s >> inst.edges[k].first) & 1 ? -1 : 1;
        const int zb = (s >> inst.edges[k].second) & 1 ? -1 : 1;
        e += inst.couplings[k] * za * zb;
      }
      energies[s] = e;
      top = std::max(top, e);
    }
    double sum = 0.0;
    for (double e : energies) sum += std::exp(e - top);
    const double log_z = top + std::log(sum);
    const double rel = std::abs(log_z - inst.log_partition_p) / std::abs(log_z);
    checks.push_back({"log_partition_rel_error", format_double(rel), "<=1e-10", rel <= 1e-10});
    const Structure all_ones(space.dims(), 1);
    const double v = objective->evaluate(all_ones);
    const double expected = inst.reg * static_cast<double>(inst.edges.size());
    checks.push_back({"objective_all_ones", format_double(v), format_double(expected), v == expected});
    Rng rng = stream_rng(config.fig1_seed, 200);
    double min_kl = HUGE_VAL;
    for (int i = 0; i < 100; ++i) min_kl = std::min(min_kl, ising_kl(inst, space.sample_valid(rng)));
    checks.push_back({"min_kl_100_random", format_double(min_kl), ">=0", min_kl >= 0.0});
  }
  if (const auto* cont = dynamic_cast<const ContaminationObjective*>(objective.get())) {
    const Structure zeros(space.dims(), 0);
    const double v = objective->evaluate(zeros);
    const auto& inst = cont->instance();
    double penalty = 0.0;
    for (std::size_t i = 0; i < inst.stages; ++i) {
      std::size_t violations = 0;
      for (std::size_t k = 0; k < inst.samples; ++k) {
        double z = inst.initial_fraction[k];
        for (std::size_t j = 0; j <= i; ++j) z = inst.spread(k, j) * (1.0 - z) + z;
        violations += z > inst.limit[i];
      }
      penalty += inst.penalty / static_cast<double>(inst.samples) * static_cast<double>(violations);
    }
    const double rel = std::abs(v - penalty) / std::max(1.0, std::abs(penalty));
    checks.push_back({"all_zeros_penalty_only", format_double(v), format_double(penalty), rel < 1e-12});
  }

  auto out = open_for_write(config.output / "oracle.csv");
  out << "check,value,expected,pass\n";
  bool all = true;
  for (const auto& c : checks) {
    out << c.name << ',' << c.value << ',' << c.expected << ',' << (c.pass ? "true" : "false")
        << '\n';
    log << objective->name() << ": " << c.name << " = " << c.value
        << (c.expected.empty() ? "" : " (expected " + c.expected + ")")
        << (c.pass ? "" : "  FAIL") << '\n';
    all = all && c.pass;
  }
  return all;
}

}  // namespace l2s
