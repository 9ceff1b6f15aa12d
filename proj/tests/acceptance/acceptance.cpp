// Acceptance checks. Prints one PASS/FAIL line per criterion; exit status is the number
// of failures. An optional argument (c1..c9) runs a single criterion.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "l2s/acquisition.hpp"
#include "l2s/afo.hpp"
#include "l2s/bo.hpp"
#include "l2s/experiment.hpp"
#include "l2s/objective.hpp"
#include "l2s/ranker.hpp"
#include "l2s/stats.hpp"

using namespace l2s;
namespace fs = std::filesystem;

namespace {

// c1
constexpr std::size_t kC1States = 20;
constexpr std::size_t kC1Dims = 12;
constexpr std::size_t kC1InnerIters = 60;
constexpr double kC1Ratio = 0.95;
constexpr double kC1Fraction = 0.80;
constexpr double kC1Seconds = 120.0;
// c2
constexpr double kC2Optimum = 169.0 / 12.0;
constexpr double kC2OptimumTol = 1e-9;
constexpr double kC2Ratio = 0.8;
constexpr double kC2Seconds = 600.0;
// c4
constexpr double kC4Reg = 1e-2;
constexpr double kC4AllOnes = 0.24;
constexpr std::size_t kC4Selections = 100;
constexpr double kC4LogZRelTol = 1e-10;
// c5
constexpr double kC5EiAtZero = 0.398942;
constexpr double kC5EiTol = 1e-6;
constexpr double kC5Beta = 38.87;
constexpr double kC5BetaTol = 0.01;
// c6
constexpr std::size_t kC6Points = 20;
constexpr double kC6GradRelTol = 1e-4;
constexpr double kC6Accuracy = 0.95;
// c7
constexpr std::size_t kC7Runs = 100;
constexpr double kC7Seconds = 300.0;
// c9
constexpr std::size_t kC9Budget = 300;

const fs::path kSource = L2S_SOURCE_DIR;

struct Verdict {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("l2s_acceptance_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Config shipped(const std::string& name, const fs::path& output) {
  Config c = Config::load(kSource / "configs" / name);
  c.set("experiment.output", output.string());
  return c;
}

double final_mean(const AggregateReport& report, const std::string& method) {
  for (const auto& row : report.rows)
    if (row.method == method && row.iteration == report.iterations) return row.mean;
  return NAN;
}

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(10);
  s << v;
  return s.str();
}

Verdict c1() {
  const auto t0 = std::chrono::steady_clock::now();
  const LabsObjective labs(LabsInstance{kC1Dims});
  const auto& space = labs.space();
  std::size_t good = 0;
  double worst = HUGE_VAL;
  for (std::size_t k = 0; k < kC1States; ++k) {
    const History warm = run_random_search(labs, 20, 1000 + k);
    TrainingSet data;
    for (const auto& r : warm.records) data.add(r.structure, r.value);
    const auto forest = RandomForest::fit(data, space.domain_sizes(), {}, 2000 + k);
    const AcquisitionFunction af(forest, warm.final_incumbent(), 1, AcquisitionConfig{},
                                 space.log_cardinality());
    const ScoreFn score = [&](const Structure& x) { return af(x); };
    const double best = exhaustive_afo(score, space).best_value;

    RankerConfig rc;
    rc.init_seed = 3000 + k;
    Ranker ranker(space.domain_sizes(), rc);
    L2sConfig cfg;
    cfg.max_iters = kC1InnerIters;
    cfg.stall_window = 0;
    Rng rng(4000 + k);
    const double found = l2s_disco_afo(score, ranker, space, labs.neighborhood(), cfg, rng).best_value;
    const double ratio = found / best;
    worst = std::min(worst, ratio);
    if (found >= kC1Ratio * best) ++good;
  }
  const double secs = seconds_since(t0);
  const double frac = static_cast<double>(good) / static_cast<double>(kC1States);
  return {frac >= kC1Fraction && secs <= kC1Seconds,
          std::to_string(good) + "/" + std::to_string(kC1States) + " states within " + fmt(kC1Ratio) +
              " of the exhaustive AF maximum (worst ratio " + fmt(worst) + "), " + fmt(secs) + " s"};
}

Verdict c2() {
  const auto t0 = std::chrono::steady_clock::now();
  const LabsObjective labs(LabsInstance{13});
  const double optimum = *labs.best_known();
  const bool optimum_ok = std::abs(optimum - kC2Optimum) <= kC2OptimumTol;

  const fs::path out = scratch("c2");
  const auto config = load_experiment(shipped("labs13.cfg", out));
  std::ostringstream log;
  const auto report = run_experiment(config, log);
  fs::remove_all(out);
  const double mean_final = final_mean(report, "l2s-disco-ucb");
  const double threshold = kC2Ratio * kC2Optimum;
  const double secs = seconds_since(t0);
  const bool bo_ok = report.ok() && report.iterations == 250 && config.seeds.size() == 10 &&
                     mean_final >= threshold;
  return {optimum_ok && bo_ok && secs <= kC2Seconds,
          "exhaustive optimum " + fmt(optimum) + " vs stated " + fmt(kC2Optimum) +
              (optimum_ok ? " (match)" : " (MISMATCH)") + "; mean final merit factor " +
              fmt(mean_final) + " vs threshold " + fmt(threshold) + ", " + fmt(secs) + " s"};
}

Verdict c3() {
  const fs::path out = scratch("c3");
  const auto config = load_experiment(shipped("labs20.cfg", out));
  std::ostringstream log;
  const auto report = run_experiment(config, log);
  fs::remove_all(out);
  const double l2s = final_mean(report, "l2s-disco-ucb");
  const double rr = final_mean(report, "rr-local-search-ucb");
  return {report.ok() && report.iterations == 150 && config.seeds.size() == 10 && l2s >= rr,
          "mean final incumbent l2s-disco-ucb " + fmt(l2s) + " vs rr-local-search-ucb " + fmt(rr)};
}

// Independent enumeration of log Z and edge moments.
void brute_force_ising(const IsingInstance& inst, double& log_z, std::vector<double>& moments) {
  const std::size_t n = inst.nodes;
  std::vector<double> energies;
  double top = -HUGE_VAL;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
    double e = 0.0;
    for (std::size_t k = 0; k < inst.edges.size(); ++k) {
      const int za = (s >> inst.edges[k].first) & 1 ? 1 : -1;
      const int zb = (s >> inst.edges[k].second) & 1 ? 1 : -1;
      e += inst.couplings[k] * za * zb;
    }
    energies.push_back(e);
    top = std::max(top, e);
  }
  double z = 0.0;
  moments.assign(inst.edges.size(), 0.0);
  for (std::uint64_t s = 0; s < energies.size(); ++s) {
    const double w = std::exp(energies[s] - top);
    z += w;
    for (std::size_t k = 0; k < inst.edges.size(); ++k) {
      const int za = (s >> inst.edges[k].first) & 1 ? 1 : -1;
      const int zb = (s >> inst.edges[k].second) & 1 ? 1 : -1;
      moments[k] += w * za * zb;
    }
  }
  for (auto& m : moments) m /= z;
  log_z = top + std::log(z);
}

Verdict c4() {
  IsingParams p;
  p.reg = kC4Reg;
  const IsingObjective f(p);
  const auto& inst = f.instance();
  const Structure all_ones(inst.edges.size(), 1);
  const double v = f.evaluate(all_ones);
  const bool ones_ok = v == kC4AllOnes && inst.edges.size() == 24;

  Rng rng(7);
  std::bernoulli_distribution coin(0.5);
  double min_kl = HUGE_VAL;
  for (std::size_t r = 0; r < kC4Selections; ++r) {
    Structure x(inst.edges.size());
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = coin(rng);
    min_kl = std::min(min_kl, ising_kl(inst, x));
  }

  double log_z = 0.0;
  std::vector<double> moments;
  brute_force_ising(inst, log_z, moments);
  double rel = std::abs(log_z - inst.log_partition_p) / std::abs(log_z);
  for (std::size_t k = 0; k < moments.size(); ++k)
    rel = std::max(rel, std::abs(moments[k] - inst.moments[k]) / std::max(1e-300, std::abs(moments[k])));
  return {ones_ok && min_kl >= 0.0 && rel <= kC4LogZRelTol,
          "objective(all-ones) = " + fmt(v) + ", min KL over " + std::to_string(kC4Selections) +
              " selections " + fmt(min_kl) + ", max relative error of log Z and moments " + fmt(rel)};
}

Verdict c5() {
  const double ei0 = expected_improvement(1.3, 0.0, 1.3);
  const double ei1 = expected_improvement(1.3, 1.0, 1.3);
  const double ucb0 = upper_confidence_bound(-0.4, 0.0, 38.87);
  const double beta = ucb_beta(DiscreteSpace::binary(24).log_cardinality(), 1, 0.1);
  const bool ok = ei0 == 0.0 && std::abs(ei1 - kC5EiAtZero) <= kC5EiTol && ucb0 == -0.4 &&
                  std::abs(beta - kC5Beta) <= kC5BetaTol;
  return {ok, "EI(sigma=0) = " + fmt(ei0) + ", EI(sigma=1) = " + fmt(ei1) + ", UCB(sigma=0) = " +
                  fmt(ucb0) + " for mean -0.4, beta_1 = " + fmt(beta)};
}

Verdict c6() {
  RankerConfig cfg;
  cfg.hidden = 16;
  const std::vector<std::size_t> sizes{2, 3, 2, 2, 4, 2};
  const DiscreteSpace space(sizes);
  Ranker r(sizes, cfg);
  Rng rng(21);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst = 0.0;
  for (std::size_t point = 0; point < kC6Points; ++point) {
    for (auto& p : r.parameters()) p = u(rng);
    const RankingPair pair{space.sample_valid(rng), space.sample_valid(rng)};
    const auto analytic = r.pair_loss_gradient(pair);
    auto theta = r.parameters();
    double diff = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < theta.size(); ++i) {
      const double keep = theta[i];
      const double h = 1e-6;
      theta[i] = keep + h;
      const double up = r.pair_loss(pair);
      theta[i] = keep - h;
      const double down = r.pair_loss(pair);
      theta[i] = keep;
      const double numeric = (up - down) / (2 * h);
      diff = std::max(diff, std::abs(analytic[i] - numeric));
      scale = std::max({scale, std::abs(analytic[i]), std::abs(numeric)});
    }
    worst = std::max(worst, diff / scale);
  }

  // First variable decides the order; the rest is noise.
  RankerConfig sc;
  sc.init_seed = 5;
  Ranker learner(std::vector<std::size_t>(10, 2), sc);
  std::bernoulli_distribution coin(0.5);
  std::vector<RankingPair> pairs;
  for (int k = 0; k < 200; ++k) {
    Structure a(10), b(10);
    for (std::size_t i = 1; i < 10; ++i) {
      a[i] = coin(rng);
      b[i] = coin(rng);
    }
    a[0] = 1;
    pairs.push_back({a, b});
  }
  learner.update(pairs, 50, rng);
  std::size_t correct = 0;
  for (const auto& p : pairs) correct += learner.score(p.preferred) > learner.score(p.dispreferred);
  const double accuracy = static_cast<double>(correct) / static_cast<double>(pairs.size());
  return {worst <= kC6GradRelTol && accuracy >= kC6Accuracy,
          "max relative gradient error " + fmt(worst) + " over " + std::to_string(kC6Points) +
              " points, separable pair accuracy " + fmt(accuracy)};
}

Verdict c7() {
  const auto t0 = std::chrono::steady_clock::now();
  const fs::path a = scratch("c7a"), b = scratch("c7b");
  std::ostringstream log;
  const auto config_a = load_experiment(shipped("fig1_contamination.cfg", a));
  const auto config_b = load_experiment(shipped("fig1_contamination.cfg", b));
  const auto result = run_fig1_experiment(config_a, log);
  run_fig1_experiment(config_b, log);
  const double secs = seconds_since(t0);

  bool shape = result.columns.size() == 4 && result.stats.size() == 6 &&
               config_a.raw.get_string("benchmark.name") == "contamination" &&
               config_a.raw.get_string("fig1.acquisition", "ucb") == "ucb";
  for (const auto& col : result.columns) shape = shape && col.values.size() == kC7Runs;
  const std::string csv = slurp(a / "fig1.csv");
  const auto rows = static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n'));
  shape = shape && rows == kC7Runs + 1 && fs::exists(a / "fig1_stats.csv");
  const bool same =
      csv == slurp(b / "fig1.csv") && slurp(a / "fig1_stats.csv") == slurp(b / "fig1_stats.csv");
  fs::remove_all(a);
  fs::remove_all(b);
  return {shape && same && secs <= kC7Seconds,
          std::to_string(result.columns.size()) + " columns x " + std::to_string(rows - 1) +
              " runs, " + std::to_string(result.stats.size()) + " Mann-Whitney pairs, rerun " +
              (same ? "identical" : "DIFFERS") + ", " + fmt(secs) + " s (both runs)"};
}

Verdict c8() {
  const fs::path a = scratch("c8a"), b = scratch("c8b");
  Config ca = shipped("smoke.cfg", a);
  ca.set("experiment.methods", "l2s-disco-ucb, l2s-disco-ei, rr-local-search-ucb, sim-anneal, random-search");
  Config cb = ca;
  cb.set("experiment.output", b.string());
  cb.set("experiment.workers", "3");
  std::ostringstream log;
  const auto ea = load_experiment(ca);
  const auto report = run_experiment(ea, log);
  run_experiment(load_experiment(cb), log);
  std::size_t compared = 0;
  bool same = slurp(a / "aggregate.csv") == slurp(b / "aggregate.csv");
  ++compared;
  for (const auto& m : ea.methods)
    for (auto s : ea.seeds) {
      const fs::path rel = history_path(m.name, s);
      same = same && fs::exists(a / rel) && slurp(a / rel) == slurp(b / rel);
      ++compared;
    }
  fs::remove_all(a);
  fs::remove_all(b);
  return {report.ok() && same, std::to_string(compared) + " CSV files compared across a rerun " +
                                   "(1 worker vs 3), " + (same ? "all identical" : "DIFFERENCES")};
}

Verdict c9() {
  const auto config = load_experiment(shipped("synthetic.cfg", scratch("c9")));
  const auto objective = make_objective(config.raw);
  BoConfig bo = config.bo;
  bo.budget = kC9Budget;
  bo.solver = AfoSolver::l2s_disco;
  bo.seed = 0;
  std::size_t proposals = 0, invalid = 0;
  const History h = run_bo(*objective, bo, [&](const BoIterationInfo& info) {
    ++proposals;
    invalid += !objective->space().is_valid(info.proposed);
  });
  for (const auto& r : h.records) invalid += !objective->space().is_valid(r.structure);
  return {h.ok() && h.size() == kC9Budget && invalid == 0,
          std::to_string(h.size()) + " evaluations (" + std::to_string(proposals) +
              " surrogate-guided), " + std::to_string(invalid) + " invalid" +
              (h.ok() ? "" : ", run error: " + *h.error)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"c1", c1}, {"c2", c2}, {"c3", c3}, {"c4", c4}, {"c5", c5},
      {"c6", c6}, {"c7", c7}, {"c8", c8}, {"c9", c9}};
  const std::string only = argc > 1 ? argv[1] : "";
  int failures = 0;
  bool ran = false;
  for (const auto& [id, check] : criteria) {
    if (!only.empty() && only != id) continue;
    ran = true;
    Verdict v;
    try {
      v = check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (v.pass ? "PASS " : "FAIL ") << id << ": " << v.detail << std::endl;
    failures += !v.pass;
  }
  if (!ran) {
    std::cerr << "unknown criterion '" << only << "'\n";
    return 2;
  }
  return failures;
}
