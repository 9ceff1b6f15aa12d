#include "l2s/acquisition.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "l2s/errors.hpp"

namespace l2s {

std::string_view to_string(AcquisitionKind kind) noexcept {
  return kind == AcquisitionKind::ei ? "ei" : "ucb";
}

AcquisitionKind parse_acquisition_kind(std::string_view name) {
  if (name == "ei") return AcquisitionKind::ei;
  if (name == "ucb") return AcquisitionKind::ucb;
  throw ConfigError("unknown acquisition function '" + std::string(name) + "' (expected ei|ucb)");
}

double expected_improvement(double mean, double variance, double incumbent) noexcept {
  const double improvement = mean - incumbent;
  const double sigma = variance > 0.0 ? std::sqrt(variance) : 0.0;
  if (sigma <= 0.0) return std::max(improvement, 0.0);
  const double z = improvement / sigma;
  const double pdf = std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
  const double cdf = 0.5 * std::erfc(-z / std::numbers::sqrt2);
  return std::max(improvement * cdf + sigma * pdf, 0.0);
}

double ucb_beta(double log_cardinality, std::size_t iteration, double delta) noexcept {
  const double i = static_cast<double>(iteration);
  const double pi2 = std::numbers::pi * std::numbers::pi;
  return 2.0 * (log_cardinality + std::log(i * i * pi2 / (6.0 * delta)));
}

double upper_confidence_bound(double mean, double variance, double beta) noexcept {
  if (variance <= 0.0 || beta <= 0.0) return mean;
  return mean + std::sqrt(beta) * std::sqrt(variance);
}

AcquisitionFunction::AcquisitionFunction(const RandomForest& model, double incumbent,
                                         std::size_t bo_iteration, const AcquisitionConfig& config,
                                         double log_cardinality)
    : model_(&model),
      incumbent_(incumbent),
      bo_iteration_(bo_iteration),
      config_(config),
      beta_(0.0) {
  if (bo_iteration < 1) throw PreconditionError("acquisition: BO iteration index starts at 1");
  if (!(config.delta > 0.0)) throw PreconditionError("acquisition: delta must be > 0");
  beta_ = ucb_beta(log_cardinality, bo_iteration, config.delta);
}

double AcquisitionFunction::operator()(const Structure& x) const {
  const SurrogatePrediction p = model_->predict(x);
  if (config_.kind == AcquisitionKind::ei) return expected_improvement(p.mean, p.variance, incumbent_);
  return upper_confidence_bound(p.mean, p.variance, beta_);
}

}  // namespace l2s
