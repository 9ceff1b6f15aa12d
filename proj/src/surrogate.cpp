#include "l2s/surrogate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "l2s/errors.hpp"

namespace l2s {

std::size_t RegressionTree::leaf_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(nodes_.begin(), nodes_.end(), [](const Node& n) { return n.feature < 0; }));
}

std::size_t RegressionTree::depth() const noexcept {
  if (nodes_.empty()) return 0;
  std::size_t deepest = 0;
  std::vector<std::pair<std::int32_t, std::size_t>> stack{{0, 0}};
  while (!stack.empty()) {
    auto [at, d] = stack.back();
    stack.pop_back();
    deepest = std::max(deepest, d);
    if (nodes_[at].feature >= 0) {
      stack.emplace_back(nodes_[at].match, d + 1);
      stack.emplace_back(nodes_[at].mismatch, d + 1);
    }
  }
  return deepest;
}

class TreeBuilder {
 public:
  TreeBuilder(const TrainingSet& data, const std::vector<std::size_t>& domain_sizes,
              const ForestConfig& config, std::uint64_t seed)
      : data_(data), domain_sizes_(domain_sizes), config_(config), rng_(seed) {}

  RegressionTree build() {
    const std::size_t n = data_.size();
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::vector<std::size_t> sample(n);
    for (auto& s : sample) s = pick(rng_);
    RegressionTree tree;
    tree_ = &tree;
    grow(sample, 0);
    return tree;
  }

 private:
  struct Split {
    std::size_t feature = 0;
    std::uint8_t category = 0;
    double gain = 0.0;
  };

  double target(std::size_t row) const { return data_.targets[row]; }
  std::uint8_t value(std::size_t row, std::size_t feature) const {
    return data_.inputs[row][feature];
  }

  std::int32_t make_leaf(const std::vector<std::size_t>& rows) {
    RegressionTree::Node leaf;
    double lo = target(rows.front());
    double hi = lo;
    double sum = 0.0;
    for (auto r : rows) {
      sum += target(r);
      lo = std::min(lo, target(r));
      hi = std::max(hi, target(r));
    }
    // Identical targets reproduce the target exactly, otherwise keep the mean inside the range.
    leaf.value = lo == hi ? lo : std::clamp(sum / static_cast<double>(rows.size()), lo, hi);
    tree_->nodes_.push_back(leaf);
    return static_cast<std::int32_t>(tree_->nodes_.size() - 1);
  }

  // Best equality split on one feature; gain 0 when the feature is constant on `rows`.
  Split best_split_on(const std::vector<std::size_t>& rows, std::size_t feature, double total_sum,
                      bool& non_constant) const {
    const std::size_t k = domain_sizes_[feature];
    std::vector<double> sums(k, 0.0);
    std::vector<std::size_t> counts(k, 0);
    for (auto r : rows) {
      sums[value(r, feature)] += target(r);
      ++counts[value(r, feature)];
    }
    const std::size_t n = rows.size();
    Split best{feature, 0, 0.0};
    non_constant = false;
    for (std::size_t c = 0; c < k; ++c) {
      const std::size_t left = counts[c];
      if (left == 0 || left == n) continue;
      non_constant = true;
      const std::size_t right = n - left;
      if (left < config_.min_samples_leaf || right < config_.min_samples_leaf) continue;
      const double mean_l = sums[c] / static_cast<double>(left);
      const double mean_r = (total_sum - sums[c]) / static_cast<double>(right);
      const double diff = mean_l - mean_r;
      // SSE reduction of splitting into the two groups.
      const double gain =
          static_cast<double>(left) * static_cast<double>(right) / static_cast<double>(n) * diff *
          diff;
      if (gain > best.gain) {
        best.category = static_cast<std::uint8_t>(c);
        best.gain = gain;
      }
    }
    return best;
  }

  std::int32_t grow(std::vector<std::size_t>& rows, std::size_t depth) {
    const std::size_t n = rows.size();
    double lo = target(rows.front());
    double hi = lo;
    double sum = 0.0;
    for (auto r : rows) {
      sum += target(r);
      lo = std::min(lo, target(r));
      hi = std::max(hi, target(r));
    }
    const bool depth_capped = config_.max_depth != 0 && depth >= config_.max_depth;
    if (lo == hi || n < 2 * config_.min_samples_leaf || depth_capped) return make_leaf(rows);

    const std::size_t dims = domain_sizes_.size();
    std::vector<std::size_t> order(dims);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::shuffle(order.begin(), order.end(), rng_);

    // Inspect ceil(d/3) features; keep going past that only while no usable split was seen.
    const double tolerance = 1e-12 * std::max(1.0, (hi - lo) * (hi - lo));
    const std::size_t quota = RandomForest::features_per_split(dims);
    Split best;
    bool found = false;
    for (std::size_t i = 0; i < dims; ++i) {
      if (i >= quota && found) break;
      bool non_constant = false;
      const Split s = best_split_on(rows, order[i], sum, non_constant);
      if (s.gain > tolerance && (!found || s.gain > best.gain)) {
        best = s;
        found = true;
      }
    }
    if (!found) return make_leaf(rows);

    std::vector<std::size_t> match;
    std::vector<std::size_t> mismatch;
    for (auto r : rows) (value(r, best.feature) == best.category ? match : mismatch).push_back(r);
    rows.clear();
    rows.shrink_to_fit();

    const auto index = static_cast<std::int32_t>(tree_->nodes_.size());
    RegressionTree::Node node;
    node.feature = static_cast<std::int32_t>(best.feature);
    node.category = best.category;
    tree_->nodes_.push_back(node);
    const std::int32_t match_child = grow(match, depth + 1);
    const std::int32_t mismatch_child = grow(mismatch, depth + 1);
    tree_->nodes_[index].match = match_child;
    tree_->nodes_[index].mismatch = mismatch_child;
    return index;
  }

  const TrainingSet& data_;
  const std::vector<std::size_t>& domain_sizes_;
  const ForestConfig& config_;
  std::mt19937_64 rng_;
  RegressionTree* tree_ = nullptr;
};

RandomForest RandomForest::fit(const TrainingSet& data, const std::vector<std::size_t>& domain_sizes,
                               const ForestConfig& config, std::uint64_t seed) {
  if (data.size() == 0) throw PreconditionError("RandomForest::fit: empty training set");
  if (data.targets.size() != data.inputs.size())
    throw PreconditionError("RandomForest::fit: inputs and targets differ in length");
  if (config.trees == 0) throw PreconditionError("RandomForest::fit: tree count must be >= 1");
  if (config.min_samples_leaf == 0)
    throw PreconditionError("RandomForest::fit: min_samples_leaf must be >= 1");
  for (const auto& x : data.inputs) {
    if (x.size() != domain_sizes.size())
      throw PreconditionError("RandomForest::fit: input dimension mismatch");
    for (std::size_t i = 0; i < x.size(); ++i)
      if (x[i] >= domain_sizes[i]) throw PreconditionError("RandomForest::fit: value out of domain");
  }
  for (double y : data.targets)
    if (!std::isfinite(y)) throw PreconditionError("RandomForest::fit: non-finite target");

  RandomForest forest;
  forest.domain_sizes_ = domain_sizes;
  std::mt19937_64 seeder(seed);
  forest.trees_.reserve(config.trees);
  for (std::size_t t = 0; t < config.trees; ++t) {
    TreeBuilder builder(data, forest.domain_sizes_, config, seeder());
    forest.trees_.push_back(builder.build());
  }
  return forest;
}

std::vector<double> RandomForest::tree_predictions(const Structure& x) const {
  if (x.size() != dims())
    throw PreconditionError("RandomForest::predict: structure has " + std::to_string(x.size()) +
                            " variables, model expects " + std::to_string(dims()));
  std::vector<double> out;
  out.reserve(trees_.size());
  for (const auto& tree : trees_) out.push_back(tree.predict(x));
  return out;
}

SurrogatePrediction RandomForest::predict(const Structure& x) const {
  if (x.size() != dims())
    throw PreconditionError("RandomForest::predict: structure has " + std::to_string(x.size()) +
                            " variables, model expects " + std::to_string(dims()));
  double lo = trees_.front().predict(x);
  double hi = lo;
  double per_tree[64];
  std::vector<double> spill;
  double* values = per_tree;
  if (trees_.size() > 64) {
    spill.resize(trees_.size());
    values = spill.data();
  }
  double sum = 0.0;
  for (std::size_t t = 0; t < trees_.size(); ++t) {
    values[t] = t == 0 ? lo : trees_[t].predict(x);
    lo = std::min(lo, values[t]);
    hi = std::max(hi, values[t]);
    sum += values[t];
  }
  if (lo == hi) return {lo, 0.0};
  const double count = static_cast<double>(trees_.size());
  const double mean = std::clamp(sum / count, lo, hi);
  double squares = 0.0;
  for (std::size_t t = 0; t < trees_.size(); ++t) {
    const double d = values[t] - mean;
    squares += d * d;
  }
  return {mean, squares / count};
}

}  // namespace l2s
