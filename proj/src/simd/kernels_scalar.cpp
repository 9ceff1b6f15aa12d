#include "l2s/simd/kernels.hpp"

namespace l2s::simd {
namespace {

std::int64_t labs_energy_scalar(const std::int8_t* s, std::size_t n) {
  std::int64_t energy = 0;
  for (std::size_t k = 1; k < n; ++k) {
    std::int64_t c = 0;
    for (std::size_t i = 0; i + k < n; ++i) c += s[i] * s[i + k];
    energy += c * c;
  }
  return energy;
}

void ising_energies_scalar(const std::uint8_t* edge_a, const std::uint8_t* edge_b,
                           const double* couplings, std::size_t edges, std::uint32_t first,
                           std::size_t count, double* out) {
  for (std::size_t k = 0; k < count; ++k) {
    const std::uint32_t state = first + static_cast<std::uint32_t>(k);
    double energy = 0.0;
    for (std::size_t e = 0; e < edges; ++e) {
      const std::uint32_t differ = ((state >> edge_a[e]) ^ (state >> edge_b[e])) & 1u;
      const double sign = 1.0 - 2.0 * static_cast<double>(differ);
      energy = energy + couplings[e] * sign;
    }
    out[k] = energy;
  }
}

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += a[i] * b[i];
  return sum;
}

void gather_add_scalar(const double* table, const std::uint32_t* offsets, std::size_t count,
                       std::size_t width, double* out) {
  for (std::size_t k = 0; k < count; ++k) {
    const double* column = table + offsets[k];
    for (std::size_t j = 0; j < width; ++j) out[j] += column[j];
  }
}

void scatter_axpy_scalar(double* table, const std::uint32_t* offsets, std::size_t count,
                         std::size_t width, double alpha, const double* v) {
  for (std::size_t k = 0; k < count; ++k) {
    double* column = table + offsets[k];
    for (std::size_t j = 0; j < width; ++j) column[j] += alpha * v[j];
  }
}

void axpy_scalar(double* y, const double* x, std::size_t n, double alpha) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

}  // namespace

namespace detail {
const Kernels kScalar{Backend::scalar,     labs_energy_scalar,  ising_energies_scalar, dot_scalar,
                      gather_add_scalar,   scatter_axpy_scalar, axpy_scalar};
}  // namespace detail

}  // namespace l2s::simd
