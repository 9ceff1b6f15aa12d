#include <cmath>

#include "l2s/errors.hpp"
#include "l2s/objective.hpp"
#include "l2s/simd/kernels.hpp"

namespace l2s {

std::int64_t labs_energy(std::span<const std::int8_t> sequence) {
  return simd::labs_energy(sequence);
}

double merit_factor(std::span<const std::int8_t> sequence) {
  const std::int64_t energy = labs_energy(sequence);
  if (energy < 1) throw PreconditionError("merit_factor: E(S) = 0, sequence length must be >= 2");
  const double n = static_cast<double>(sequence.size());
  return n * n / static_cast<double>(energy);
}

std::vector<std::int8_t> to_spins(const Structure& x) {
  std::vector<std::int8_t> spins(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) spins[i] = x[i] == 0 ? 1 : -1;
  return spins;
}

LabsObjective::LabsObjective(LabsInstance instance)
    : Objective("labs", DiscreteSpace::binary(instance.length), Direction::maximize,
                Neighborhood::hamming1(), {{"n", std::to_string(instance.length)}}),
      instance_(instance) {
  if (instance.length < 2) throw PreconditionError("LABS: sequence length must be >= 2");
}

double LabsObjective::evaluate_valid(const Structure& x) const {
  const auto spins = to_spins(x);
  return merit_factor(spins);
}

}  // namespace l2s
