// l2s: experiment runner.
//
//   l2s run <config>        benchmark x methods x seeds grid
//   l2s fig1 <config>       restart-strategy comparison on a frozen acquisition function
//   l2s oracle <config>     brute-force checks for the configured benchmark
//   l2s aggregate <dir>     recompute aggregate.csv from history/*.csv

#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "l2s/errors.hpp"
#include "l2s/experiment.hpp"
#include "l2s/simd/kernels.hpp"

namespace {

struct Overrides {
  std::optional<std::string> seeds;
  std::optional<std::size_t> budget;
  std::optional<std::string> out;
  std::optional<std::size_t> workers;
  std::optional<std::string> kernels;
};

void add_overrides(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--seeds", o.seeds, "seed list, e.g. 0,1,2 or 0..9");
  cmd->add_option("--budget", o.budget, "total evaluations per run");
  cmd->add_option("--out", o.out, "output directory");
  cmd->add_option("--workers", o.workers, "parallel grid cells");
  cmd->add_option("--kernels", o.kernels, "auto | scalar | avx2");
}

l2s::ExperimentConfig load(const std::string& path, const Overrides& o) {
  l2s::Config raw = l2s::Config::load(path);
  if (o.seeds) raw.set("experiment.seeds", *o.seeds);
  if (o.budget) raw.set("experiment.budget", std::to_string(*o.budget));
  if (o.out) raw.set("experiment.output", *o.out);
  if (o.workers) raw.set("experiment.workers", std::to_string(*o.workers));
  if (o.kernels) raw.set("kernels.backend", *o.kernels);

  const std::string backend = raw.has("kernels.backend") ? raw.get_string("kernels.backend") : "auto";
  if (backend == "scalar") {
    l2s::simd::select(l2s::simd::Backend::scalar);
  } else if (backend == "avx2") {
    if (!l2s::simd::select(l2s::simd::Backend::avx2))
      throw l2s::ConfigError("avx2 kernels are not available on this machine");
  } else if (backend != "auto") {
    throw l2s::ConfigError("kernels.backend must be auto, scalar or avx2");
  }
  return l2s::load_experiment(raw);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Combinatorial Bayesian optimisation with learned local-search restarts"};
  app.require_subcommand(1);

  std::string config_path;
  std::string dir;
  Overrides overrides;

  auto* run = app.add_subcommand("run", "run the benchmark x methods x seeds grid");
  run->add_option("config", config_path, "config file")->required();
  add_overrides(run, overrides);

  auto* fig1 = app.add_subcommand("fig1", "restart-strategy comparison on a frozen AF");
  fig1->add_option("config", config_path, "config file")->required();
  add_overrides(fig1, overrides);

  auto* oracle = app.add_subcommand("oracle", "brute-force checks for the benchmark");
  oracle->add_option("config", config_path, "config file")->required();
  add_overrides(oracle, overrides);

  auto* agg = app.add_subcommand("aggregate", "recompute aggregate.csv from history files");
  agg->add_option("dir", dir, "experiment output directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      const auto config = load(config_path, overrides);
      std::cerr << "kernels: " << l2s::simd::backend_name(l2s::simd::active().backend) << '\n';
      const auto report = l2s::run_experiment(config, std::cerr);
      for (const auto& f : report.failures) std::cerr << "failed: " << f << '\n';
      std::cout << "wrote " << config.output.string() << "/aggregate.csv\n";
      return report.ok() ? 0 : 1;
    }
    if (fig1->parsed()) {
      const auto config = load(config_path, overrides);
      l2s::run_fig1_experiment(config, std::cout);
      std::cout << "wrote " << config.output.string() << "/fig1.csv\n";
      return 0;
    }
    if (oracle->parsed()) {
      const auto config = load(config_path, overrides);
      return l2s::run_oracle(config, std::cout) ? 0 : 1;
    }
    if (agg->parsed()) {
      const auto report = l2s::aggregate_directory(dir);
      std::cout << "aggregated " << report.methods.size() << " methods over "
                << report.iterations << " iterations\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
