#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "l2s/space.hpp"

namespace l2s {

/// Observed (structure, target) pairs. Targets are in maximisation orientation.
struct TrainingSet {
  std::vector<Structure> inputs;
  std::vector<double> targets;

  std::size_t size() const noexcept { return inputs.size(); }
  void add(Structure x, double y) {
    inputs.push_back(std::move(x));
    targets.push_back(y);
  }
};

struct ForestConfig {
  std::size_t trees = 20;
  /// 0 means unlimited.
  std::size_t max_depth = 0;
  std::size_t min_samples_leaf = 1;
};

struct SurrogatePrediction {
  double mean = 0.0;
  double variance = 0.0;
};

/// Regression tree over categorical variables. Internal nodes test x[feature] == category.
class RegressionTree {
 public:
  struct Node {
    std::int32_t feature = -1;  // -1 marks a leaf
    std::uint8_t category = 0;
    std::int32_t match = -1;     // child for x[feature] == category
    std::int32_t mismatch = -1;  // child otherwise
    double value = 0.0;          // leaf mean
  };

  double predict(const Structure& x) const noexcept {
    std::int32_t at = 0;
    while (nodes_[at].feature >= 0) {
      const Node& n = nodes_[at];
      at = x[static_cast<std::size_t>(n.feature)] == n.category ? n.match : n.mismatch;
    }
    return nodes_[at].value;
  }

  std::size_t node_count() const noexcept { return nodes_.size(); }
  std::size_t leaf_count() const noexcept;
  std::size_t depth() const noexcept;
  const std::vector<Node>& nodes() const noexcept { return nodes_; }

 private:
  friend class TreeBuilder;
  std::vector<Node> nodes_;
};

/// Random-forest surrogate: bootstrap-bagged trees with ceil(d/3) candidate split
/// variables per node. Predictive mean and variance are the mean and population
/// variance of the per-tree predictions. Immutable once fitted.
class RandomForest {
 public:
  static RandomForest fit(const TrainingSet& data, const std::vector<std::size_t>& domain_sizes,
                          const ForestConfig& config, std::uint64_t seed);

  SurrogatePrediction predict(const Structure& x) const;
  /// Per-tree predictions, in tree order.
  std::vector<double> tree_predictions(const Structure& x) const;

  std::size_t tree_count() const noexcept { return trees_.size(); }
  std::size_t dims() const noexcept { return domain_sizes_.size(); }
  const RegressionTree& tree(std::size_t i) const { return trees_.at(i); }

  /// Candidate split variables per node for d variables.
  static std::size_t features_per_split(std::size_t dims) noexcept { return (dims + 2) / 3; }

 private:
  std::vector<std::size_t> domain_sizes_;
  std::vector<RegressionTree> trees_;
};

}  // namespace l2s
