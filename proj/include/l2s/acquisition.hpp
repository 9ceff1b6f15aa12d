#pragma once

#include <cstddef>
#include <string_view>

#include "l2s/surrogate.hpp"

namespace l2s {

enum class AcquisitionKind { ei, ucb };

std::string_view to_string(AcquisitionKind kind) noexcept;
AcquisitionKind parse_acquisition_kind(std::string_view name);

struct AcquisitionConfig {
  AcquisitionKind kind = AcquisitionKind::ucb;
  /// Confidence parameter of the UCB exploration schedule.
  double delta = 0.1;
};

/// Closed-form expected improvement over `incumbent` under N(mean, variance).
double expected_improvement(double mean, double variance, double incumbent) noexcept;

/// beta_i = 2 log(|X| i^2 pi^2 / (6 delta)), with |X| given as log|X|.
double ucb_beta(double log_cardinality, std::size_t iteration, double delta) noexcept;

/// mean + sqrt(beta) * sigma.
double upper_confidence_bound(double mean, double variance, double beta) noexcept;

/// AF(M, x) for one BO iteration: surrogate, incumbent y+ (maximisation orientation)
/// and the 1-based BO iteration index that drives the UCB schedule.
class AcquisitionFunction {
 public:
  AcquisitionFunction(const RandomForest& model, double incumbent, std::size_t bo_iteration,
                      const AcquisitionConfig& config, double log_cardinality);

  double operator()(const Structure& x) const;

  AcquisitionKind kind() const noexcept { return config_.kind; }
  double incumbent() const noexcept { return incumbent_; }
  std::size_t bo_iteration() const noexcept { return bo_iteration_; }
  double beta() const noexcept { return beta_; }
  const RandomForest& model() const noexcept { return *model_; }

 private:
  const RandomForest* model_;
  double incumbent_;
  std::size_t bo_iteration_;
  AcquisitionConfig config_;
  double beta_;
};

}  // namespace l2s
