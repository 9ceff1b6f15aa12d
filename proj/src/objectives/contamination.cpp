#include <random>

#include "l2s/errors.hpp"
#include "l2s/objective.hpp"
#include "l2s/text.hpp"

namespace l2s {
namespace {

double draw_beta(std::mt19937_64& rng, const BetaParams& params) {
  std::gamma_distribution<double> ga(params.alpha, 1.0);
  std::gamma_distribution<double> gb(params.beta, 1.0);
  const double a = ga(rng);
  const double b = gb(rng);
  return a / (a + b);
}

void check(const ContaminationParams& p) {
  if (p.stages < 1) throw PreconditionError("contamination: stages must be >= 1");
  if (p.samples < 1) throw PreconditionError("contamination: samples (T) must be >= 1");
  if (!(p.penalty > 0.0)) throw PreconditionError("contamination: penalty (rho) must be > 0");
  if (p.reg < 0.0) throw PreconditionError("contamination: reg (lambda) must be >= 0");
  for (const auto* b : {&p.initial, &p.spread, &p.decay})
    if (!(b->alpha > 0.0 && b->beta > 0.0))
      throw PreconditionError("contamination: Beta parameters must be positive");
}

}  // namespace

ContaminationInstance make_contamination_instance(const ContaminationParams& params) {
  check(params);
  ContaminationInstance inst;
  inst.stages = params.stages;
  inst.samples = params.samples;
  inst.cost.assign(params.stages, params.cost);
  inst.limit.assign(params.stages, params.limit);
  inst.penalty = params.penalty;
  inst.reg = params.reg;

  std::mt19937_64 rng(params.seed);
  inst.initial_fraction.resize(params.samples);
  for (auto& z : inst.initial_fraction) z = draw_beta(rng, params.initial);
  inst.spread_rates.resize(params.samples * params.stages);
  for (auto& r : inst.spread_rates) r = draw_beta(rng, params.spread);
  inst.decay_rates.resize(params.samples * params.stages);
  for (auto& r : inst.decay_rates) r = draw_beta(rng, params.decay);
  return inst;
}

double contamination_objective(const ContaminationInstance& inst, const Structure& x) {
  if (x.size() != inst.stages)
    throw PreconditionError("contamination: structure has " + std::to_string(x.size()) +
                            " stages, instance has " + std::to_string(inst.stages));
  std::vector<std::size_t> violations(inst.stages, 0);
  for (std::size_t k = 0; k < inst.samples; ++k) {
    double z = inst.initial_fraction[k];
    for (std::size_t i = 0; i < inst.stages; ++i) {
      const double act = x[i] ? 1.0 : 0.0;
      // Untreated stages spread contamination to clean food; treatment removes a fraction.
      z = inst.spread(k, i) * (1.0 - act) * (1.0 - z) + (1.0 - inst.decay(k, i) * act) * z;
      if (z > inst.limit[i]) ++violations[i];
    }
  }
  const double scale = inst.penalty / static_cast<double>(inst.samples);
  double total = 0.0;
  std::size_t selected = 0;
  for (std::size_t i = 0; i < inst.stages; ++i) {
    const double act = x[i] ? 1.0 : 0.0;
    total += inst.cost[i] * act + scale * static_cast<double>(violations[i]);
    selected += x[i] ? 1 : 0;
  }
  return total + inst.reg * static_cast<double>(selected);
}

ContaminationObjective::ContaminationObjective(const ContaminationParams& params)
    : Objective("contamination", DiscreteSpace::binary(params.stages), Direction::minimize,
                Neighborhood::hamming1(),
                {{"stages", std::to_string(params.stages)},
                 {"samples", std::to_string(params.samples)},
                 {"penalty", format_double(params.penalty)},
                 {"reg", format_double(params.reg)},
                 {"limit", format_double(params.limit)},
                 {"cost", format_double(params.cost)},
                 {"initial_beta", format_double(params.initial.alpha) + "," +
                                      format_double(params.initial.beta)},
                 {"spread_beta", format_double(params.spread.alpha) + "," +
                                     format_double(params.spread.beta)},
                 {"decay_beta", format_double(params.decay.alpha) + "," +
                                    format_double(params.decay.beta)},
                 {"seed", std::to_string(params.seed)}}),
      instance_(make_contamination_instance(params)) {}

double ContaminationObjective::evaluate_valid(const Structure& x) const {
  return contamination_objective(instance_, x);
}

}  // namespace l2s
