#include <algorithm>
#include <cmath>
#include <random>

#include "l2s/errors.hpp"
#include "l2s/objective.hpp"

namespace l2s {
namespace {

DiscreteSpace cardinality_space(std::size_t dims, std::size_t values) {
  if (values < 2 || dims < values || dims % values != 0)
    throw PreconditionError("synthetic: dims must be a positive multiple of values (>= 2)");
  const std::size_t per_value = dims / values;
  auto validity = [values, per_value](const Structure& x) {
    std::vector<std::size_t> counts(values, 0);
    for (auto v : x) ++counts[v];
    return std::all_of(counts.begin(), counts.end(),
                       [per_value](std::size_t c) { return c == per_value; });
  };
  return DiscreteSpace(std::vector<std::size_t>(dims, values), validity,
                       "cardinality(" + std::to_string(per_value) + " of each value)");
}

}  // namespace

SyntheticConstrainedObjective::SyntheticConstrainedObjective(const SyntheticParams& params)
    : Objective("synthetic", cardinality_space(params.dims, params.values), Direction::minimize,
                Neighborhood::swap_all(params.dims),
                {{"dims", std::to_string(params.dims)},
                 {"values", std::to_string(params.values)},
                 {"triples", std::to_string(params.triples)},
                 {"seed", std::to_string(params.seed)}}),
      dims_(params.dims),
      values_(params.values) {
  std::mt19937_64 rng(params.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const std::size_t features = dims_ * values_;
  unary_.resize(features);
  for (auto& w : unary_) w = gauss(rng);
  // Pairwise weights scaled so no single order dominates the total variance.
  const double pair_scale = 1.0 / std::sqrt(static_cast<double>(dims_));
  pairwise_.assign(features * features, 0.0);
  for (std::size_t i = 0; i < dims_; ++i)
    for (std::size_t j = i + 1; j < dims_; ++j)
      for (std::size_t a = 0; a < values_; ++a)
        for (std::size_t b = 0; b < values_; ++b)
          pairwise_[(i * values_ + a) * features + j * values_ + b] = pair_scale * gauss(rng);

  std::uniform_int_distribution<std::size_t> pick_var(0, dims_ - 1);
  std::uniform_int_distribution<std::size_t> pick_value(0, values_ - 1);
  triples_.reserve(params.triples);
  while (triples_.size() < params.triples) {
    Triple t{};
    for (int k = 0; k < 3; ++k) t.var[k] = pick_var(rng);
    if (t.var[0] == t.var[1] || t.var[0] == t.var[2] || t.var[1] == t.var[2]) continue;
    for (int k = 0; k < 3; ++k) t.value[k] = static_cast<Structure::value_type>(pick_value(rng));
    t.weight = 2.0 * gauss(rng);
    triples_.push_back(t);
  }
}

double SyntheticConstrainedObjective::evaluate_valid(const Structure& x) const {
  const std::size_t features = dims_ * values_;
  double total = 0.0;
  for (std::size_t i = 0; i < dims_; ++i) {
    const std::size_t fi = i * values_ + x[i];
    total += unary_[fi];
    for (std::size_t j = i + 1; j < dims_; ++j) total += pairwise_[fi * features + j * values_ + x[j]];
  }
  for (const auto& t : triples_) {
    if (x[t.var[0]] == t.value[0] && x[t.var[1]] == t.value[1] && x[t.var[2]] == t.value[2])
      total += t.weight;
  }
  return total;
}

}  // namespace l2s
