#include "l2s/ranker.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "l2s/errors.hpp"
#include "l2s/simd/kernels.hpp"

namespace l2s {
namespace {

// log(1 + exp(-margin)) without overflow.
double softplus_neg(double margin) {
  if (margin > 0.0) return std::log1p(std::exp(-margin));
  return -margin + std::log1p(std::exp(margin));
}

// d/dmargin of softplus_neg: -1 / (1 + exp(margin)).
double softplus_neg_slope(double margin) {
  if (margin > 0.0) {
    const double e = std::exp(-margin);
    return -e / (1.0 + e);
  }
  return -1.0 / (1.0 + std::exp(margin));
}

}  // namespace

void PairBuffer::add(std::vector<RankingPair> pairs, double preferred_value,
                     double dispreferred_value) {
  sources_.insert(sources_.end(), pairs.size(), Source{preferred_value, dispreferred_value});
  pairs_.insert(pairs_.end(), std::make_move_iterator(pairs.begin()),
                std::make_move_iterator(pairs.end()));
}

void PairBuffer::clear() noexcept {
  pairs_.clear();
  sources_.clear();
}

std::vector<RankingPair> generate_pairs(const Trajectory& t1, const Trajectory& t2, std::size_t cap,
                                        Rng& rng) {
  if (t1.value == t2.value || t1.states.empty() || t2.states.empty()) return {};
  const Trajectory& hi = t1.value > t2.value ? t1 : t2;
  const Trajectory& lo = t1.value > t2.value ? t2 : t1;
  const std::size_t total = hi.states.size() * lo.states.size();
  std::vector<RankingPair> out;
  if (total <= cap) {
    out.reserve(total);
    for (const auto& a : hi.states)
      for (const auto& b : lo.states) out.push_back({a, b});
    return out;
  }
  std::vector<std::size_t> picks(total);
  std::iota(picks.begin(), picks.end(), std::size_t{0});
  // Partial Fisher-Yates: the first `cap` entries become a uniform sample.
  for (std::size_t i = 0; i < cap; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, total - 1);
    std::swap(picks[i], picks[pick(rng)]);
  }
  picks.resize(cap);
  std::sort(picks.begin(), picks.end());
  out.reserve(cap);
  for (auto p : picks) out.push_back({hi.states[p / lo.states.size()], lo.states[p % lo.states.size()]});
  return out;
}

Ranker::Ranker(std::vector<std::size_t> domain_sizes, const RankerConfig& config)
    : domain_sizes_(std::move(domain_sizes)), hidden_(config.hidden), config_(config) {
  if (domain_sizes_.empty()) throw PreconditionError("Ranker: need at least one variable");
  if (hidden_ == 0) throw PreconditionError("Ranker: hidden width must be >= 1");
  feature_offset_.reserve(domain_sizes_.size());
  for (auto size : domain_sizes_) {
    feature_offset_.push_back(features_);
    features_ += size;
  }
  theta_.assign(output_bias_offset() + 1, 0.0);
  std::mt19937_64 rng(config.init_seed);
  std::uniform_real_distribution<double> init(-config.init_scale, config.init_scale);
  for (std::size_t i = 0; i < output_weight_offset(); ++i) theta_[i] = init(rng);
}

void Ranker::forward(const Structure& x, Activation& act) const {
  if (x.size() != dims())
    throw PreconditionError("Ranker: structure has " + std::to_string(x.size()) +
                            " variables, ranker expects " + std::to_string(dims()));
  const auto& kernels = simd::active();
  act.columns.resize(dims());
  for (std::size_t i = 0; i < dims(); ++i) {
    if (x[i] >= domain_sizes_[i]) throw PreconditionError("Ranker: value out of domain");
    act.columns[i] = static_cast<std::uint32_t>((feature_offset_[i] + x[i]) * hidden_);
  }
  act.hidden.assign(theta_.begin() + static_cast<std::ptrdiff_t>(hidden_bias_offset()),
                    theta_.begin() + static_cast<std::ptrdiff_t>(output_weight_offset()));
  kernels.gather_add(theta_.data(), act.columns.data(), act.columns.size(), hidden_,
                     act.hidden.data());
  for (auto& h : act.hidden) h = std::tanh(h);
  act.output = kernels.dot(theta_.data() + output_weight_offset(), act.hidden.data(), hidden_) +
               theta_[output_bias_offset()];
}

double Ranker::score(const Structure& x) const {
  Activation act;
  forward(x, act);
  return act.output;
}

double Ranker::pair_loss(const RankingPair& pair) const {
  return softplus_neg(score(pair.preferred) - score(pair.dispreferred));
}

void Ranker::accumulate_gradient(const Activation& act, double scale,
                                 std::vector<double>& grad) const {
  const double* w2 = theta_.data() + output_weight_offset();
  std::vector<double> delta(hidden_);
  for (std::size_t j = 0; j < hidden_; ++j)
    delta[j] = w2[j] * (1.0 - act.hidden[j] * act.hidden[j]);
  const auto& kernels = simd::active();
  kernels.scatter_axpy(grad.data(), act.columns.data(), act.columns.size(), hidden_, scale,
                       delta.data());
  kernels.axpy(grad.data() + hidden_bias_offset(), delta.data(), hidden_, scale);
  kernels.axpy(grad.data() + output_weight_offset(), act.hidden.data(), hidden_, scale);
  grad[output_bias_offset()] += scale;
}

std::vector<double> Ranker::pair_loss_gradient(const RankingPair& pair) const {
  Activation p;
  Activation d;
  forward(pair.preferred, p);
  forward(pair.dispreferred, d);
  const double slope = softplus_neg_slope(p.output - d.output);
  std::vector<double> grad(theta_.size(), 0.0);
  accumulate_gradient(p, slope, grad);
  accumulate_gradient(d, -slope, grad);
  return grad;
}

double Ranker::update(std::span<const RankingPair> pairs, std::size_t epochs, Rng& rng) {
  if (pairs.empty() || epochs == 0) return 0.0;
  const auto& kernels = simd::active();
  std::vector<std::size_t> order(pairs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  Activation p;
  Activation d;
  std::vector<double> delta_p(hidden_);
  std::vector<double> delta_d(hidden_);
  std::vector<double> delta_out(hidden_);
  double last_epoch_loss = 0.0;
  for (std::size_t epoch = 0; epoch < epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    double epoch_loss = 0.0;
    for (auto k : order) {
      forward(pairs[k].preferred, p);
      forward(pairs[k].dispreferred, d);
      const double margin = p.output - d.output;
      epoch_loss += softplus_neg(margin);
      const double step = -config_.step_size * softplus_neg_slope(margin);
      // Both backward passes read theta before any of it moves.
      const double* w2 = theta_.data() + output_weight_offset();
      for (std::size_t j = 0; j < hidden_; ++j) {
        delta_p[j] = w2[j] * (1.0 - p.hidden[j] * p.hidden[j]);
        delta_d[j] = w2[j] * (1.0 - d.hidden[j] * d.hidden[j]);
        delta_out[j] = p.hidden[j] - d.hidden[j];
      }
      kernels.scatter_axpy(theta_.data(), p.columns.data(), p.columns.size(), hidden_, step,
                           delta_p.data());
      kernels.scatter_axpy(theta_.data(), d.columns.data(), d.columns.size(), hidden_, -step,
                           delta_d.data());
      double* b1 = theta_.data() + hidden_bias_offset();
      kernels.axpy(b1, delta_p.data(), hidden_, step);
      kernels.axpy(b1, delta_d.data(), hidden_, -step);
      kernels.axpy(theta_.data() + output_weight_offset(), delta_out.data(), hidden_, step);
      // The output bias cancels in the score difference.
    }
    last_epoch_loss = epoch_loss / static_cast<double>(pairs.size());
  }
  return last_epoch_loss;
}

}  // namespace l2s
