#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "l2s/space.hpp"

namespace l2s {

/// States of one local-search run, start to local optimum, and V(T) = AF(x_end).
struct Trajectory {
  std::vector<Structure> states;
  double value = 0.0;

  const Structure& start() const { return states.front(); }
  const Structure& end() const { return states.back(); }
};

struct RankingPair {
  Structure preferred;
  Structure dispreferred;
};

/// Ranking pairs of one BO iteration, with the trajectory values they came from.
class PairBuffer {
 public:
  struct Source {
    double preferred_value;
    double dispreferred_value;
  };

  void add(std::vector<RankingPair> pairs, double preferred_value, double dispreferred_value);
  void clear() noexcept;

  std::size_t size() const noexcept { return pairs_.size(); }
  bool empty() const noexcept { return pairs_.empty(); }
  const std::vector<RankingPair>& pairs() const noexcept { return pairs_; }
  const std::vector<Source>& sources() const noexcept { return sources_; }

 private:
  std::vector<RankingPair> pairs_;
  std::vector<Source> sources_;
};

/// Bipartite ranking pairs: every state of the higher-valued trajectory above every
/// state of the lower-valued one. Cross products larger than `cap` are subsampled
/// uniformly without replacement. Equal values yield no pairs.
std::vector<RankingPair> generate_pairs(const Trajectory& t1, const Trajectory& t2, std::size_t cap,
                                        Rng& rng);

struct RankerConfig {
  std::size_t hidden = 32;
  double step_size = 0.01;
  std::size_t epochs = 5;
  std::size_t pair_cap = 256;
  double init_scale = 0.1;
  std::uint64_t init_seed = 0;
};

/// Restart heuristic H(theta, x): one-hot input, one tanh hidden layer, linear output.
///
/// Parameters live in one flat vector laid out as
///   [ W1 (one column of `hidden` weights per one-hot feature) | b1 | w2 | b2 ]
/// so a forward pass sums the d active columns instead of a dense product.
class Ranker {
 public:
  Ranker(std::vector<std::size_t> domain_sizes, const RankerConfig& config);

  double score(const Structure& x) const;

  /// log(1 + exp(-(score(preferred) - score(dispreferred)))).
  double pair_loss(const RankingPair& pair) const;
  /// d pair_loss / d theta, same layout as parameters().
  std::vector<double> pair_loss_gradient(const RankingPair& pair) const;

  /// Plain SGD over `pairs` for `epochs` passes, shuffled per pass. Returns the mean
  /// loss of the final pass (0 for no pairs).
  double update(std::span<const RankingPair> pairs, std::size_t epochs, Rng& rng);
  double update(const PairBuffer& buffer, std::size_t epochs, Rng& rng) {
    return update(std::span<const RankingPair>(buffer.pairs()), epochs, rng);
  }

  std::span<const double> parameters() const noexcept { return theta_; }
  std::span<double> parameters() noexcept { return theta_; }

  std::size_t hidden() const noexcept { return hidden_; }
  std::size_t input_features() const noexcept { return features_; }
  std::size_t dims() const noexcept { return domain_sizes_.size(); }
  const RankerConfig& config() const noexcept { return config_; }

  // Offsets into parameters().
  std::size_t hidden_bias_offset() const noexcept { return features_ * hidden_; }
  std::size_t output_weight_offset() const noexcept { return hidden_bias_offset() + hidden_; }
  std::size_t output_bias_offset() const noexcept { return output_weight_offset() + hidden_; }

  friend bool operator==(const Ranker& a, const Ranker& b) noexcept {
    return a.domain_sizes_ == b.domain_sizes_ && a.theta_ == b.theta_;
  }

 private:
  struct Activation {
    std::vector<double> hidden;
    std::vector<std::uint32_t> columns;
    double output = 0.0;
  };

  void forward(const Structure& x, Activation& act) const;
  void accumulate_gradient(const Activation& act, double scale, std::vector<double>& grad) const;

  std::vector<std::size_t> domain_sizes_;
  std::vector<std::size_t> feature_offset_;
  std::size_t features_ = 0;
  std::size_t hidden_;
  RankerConfig config_;
  std::vector<double> theta_;
};

}  // namespace l2s
