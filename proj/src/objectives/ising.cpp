#include <algorithm>
#include <cmath>
#include <random>

#include "l2s/errors.hpp"
#include "l2s/objective.hpp"
#include "l2s/simd/kernels.hpp"
#include "l2s/text.hpp"

namespace l2s {
namespace {

using Edge = std::pair<std::uint8_t, std::uint8_t>;

struct EdgeArrays {
  std::vector<std::uint8_t> a;
  std::vector<std::uint8_t> b;
};

EdgeArrays split_edges(std::span<const Edge> edges, std::size_t nodes) {
  EdgeArrays out;
  out.a.reserve(edges.size());
  out.b.reserve(edges.size());
  for (const auto& [a, b] : edges) {
    if (a >= nodes || b >= nodes) throw PreconditionError("ising: edge endpoint out of range");
    out.a.push_back(a);
    out.b.push_back(b);
  }
  return out;
}

// Energies of all 2^nodes spin states.
std::vector<double> all_energies(std::size_t nodes, std::span<const Edge> edges,
                                 std::span<const double> couplings) {
  if (nodes > IsingInstance::kMaxNodes)
    throw SpaceTooLarge("ising: " + std::to_string(nodes) +
                        " nodes exceeds the enumeration guard of " +
                        std::to_string(IsingInstance::kMaxNodes));
  if (edges.size() != couplings.size())
    throw PreconditionError("ising: edge and coupling counts differ");
  const EdgeArrays arrays = split_edges(edges, nodes);
  const std::size_t states = std::size_t{1} << nodes;
  std::vector<double> energies(states);
  simd::active().ising_energies(arrays.a.data(), arrays.b.data(), couplings.data(), edges.size(),
                                0, states, energies.data());
  return energies;
}

double log_sum_exp(const std::vector<double>& energies) {
  const double top = *std::max_element(energies.begin(), energies.end());
  double sum = 0.0;
  for (double e : energies) sum += std::exp(e - top);
  return top + std::log(sum);
}

}  // namespace

double ising_log_partition(std::size_t nodes, std::span<const Edge> edges,
                           std::span<const double> couplings) {
  return log_sum_exp(all_energies(nodes, edges, couplings));
}

std::vector<double> ising_moments(std::size_t nodes, std::span<const Edge> edges,
                                  std::span<const double> couplings) {
  const auto energies = all_energies(nodes, edges, couplings);
  const double log_z = log_sum_exp(energies);
  std::vector<double> moments(edges.size(), 0.0);
  for (std::size_t s = 0; s < energies.size(); ++s) {
    const double weight = std::exp(energies[s] - log_z);
    for (std::size_t e = 0; e < edges.size(); ++e) {
      const bool differ = ((s >> edges[e].first) ^ (s >> edges[e].second)) & 1u;
      moments[e] += differ ? -weight : weight;
    }
  }
  return moments;
}

IsingInstance make_grid_ising(const IsingParams& params) {
  if (params.rows < 1 || params.cols < 1 || params.rows * params.cols < 2)
    throw PreconditionError("ising: grid needs at least two nodes");
  if (params.rows * params.cols > IsingInstance::kMaxNodes)
    throw SpaceTooLarge("ising: grid exceeds the enumeration guard of " +
                        std::to_string(IsingInstance::kMaxNodes) + " nodes");
  if (!(params.coupling_min > 0.0 && params.coupling_max >= params.coupling_min))
    throw PreconditionError("ising: coupling range must satisfy 0 < min <= max");
  if (params.reg < 0.0) throw PreconditionError("ising: reg (lambda) must be >= 0");

  IsingInstance inst;
  inst.nodes = params.rows * params.cols;
  inst.reg = params.reg;
  for (std::size_t r = 0; r < params.rows; ++r) {
    for (std::size_t c = 0; c < params.cols; ++c) {
      const auto node = static_cast<std::uint8_t>(r * params.cols + c);
      if (c + 1 < params.cols) inst.edges.emplace_back(node, static_cast<std::uint8_t>(node + 1));
      if (r + 1 < params.rows)
        inst.edges.emplace_back(node, static_cast<std::uint8_t>(node + params.cols));
    }
  }
  std::mt19937_64 rng(params.seed);
  std::uniform_real_distribution<double> magnitude(params.coupling_min, params.coupling_max);
  std::bernoulli_distribution negative(0.5);
  for (std::size_t e = 0; e < inst.edges.size(); ++e) {
    const double m = magnitude(rng);
    inst.couplings.push_back(negative(rng) ? -m : m);
  }
  inst.log_partition_p = ising_log_partition(inst.nodes, inst.edges, inst.couplings);
  inst.moments = ising_moments(inst.nodes, inst.edges, inst.couplings);
  return inst;
}

double ising_kl(const IsingInstance& inst, const Structure& x) {
  if (x.size() != inst.edges.size())
    throw PreconditionError("ising: selection has " + std::to_string(x.size()) +
                            " entries, instance has " + std::to_string(inst.edges.size()) +
                            " edges");
  std::vector<Edge> kept;
  std::vector<double> kept_couplings;
  double mismatch = 0.0;
  for (std::size_t e = 0; e < inst.edges.size(); ++e) {
    if (x[e]) {
      kept.push_back(inst.edges[e]);
      kept_couplings.push_back(inst.couplings[e]);
    } else {
      mismatch += inst.couplings[e] * inst.moments[e];
    }
  }
  const double log_partition_q = ising_log_partition(inst.nodes, kept, kept_couplings);
  return mismatch + (log_partition_q - inst.log_partition_p);
}

double ising_objective(const IsingInstance& inst, const Structure& x) {
  const double kl = ising_kl(inst, x);
  return kl + inst.reg * static_cast<double>(x.count(1));
}

IsingObjective::IsingObjective(const IsingParams& params)
    : Objective("ising", DiscreteSpace::binary(params.rows > 0 && params.cols > 0
                                                   ? 2 * params.rows * params.cols -
                                                         params.rows - params.cols
                                                   : 0),
                Direction::minimize, Neighborhood::hamming1(),
                {{"rows", std::to_string(params.rows)},
                 {"cols", std::to_string(params.cols)},
                 {"coupling_min", format_double(params.coupling_min)},
                 {"coupling_max", format_double(params.coupling_max)},
                 {"reg", format_double(params.reg)},
                 {"seed", std::to_string(params.seed)}}),
      instance_(make_grid_ising(params)) {}

double IsingObjective::evaluate_valid(const Structure& x) const {
  return ising_objective(instance_, x);
}

}  // namespace l2s
