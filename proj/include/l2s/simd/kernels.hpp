#pragma once

// Data-parallel inner loops with a scalar reference and optional AVX2 variants.
// The variant is picked once at startup from CPU capabilities; tests run every
// compiled variant against the scalar reference.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace l2s::simd {

enum class Backend { scalar, avx2 };

std::string_view backend_name(Backend backend) noexcept;

struct Kernels {
  Backend backend;

  // Sidelobe energy sum_{k=1}^{n-1} (sum_i s_i s_{i+k})^2 of a +-1 sequence.
  std::int64_t (*labs_energy)(const std::int8_t* s, std::size_t n);

  // out[k] = sum_e J_e z_a(e) z_b(e) for spin states first..first+count-1, where spin i
  // of state s is +1 when bit i of s is clear and -1 when set.
  void (*ising_energies)(const std::uint8_t* edge_a, const std::uint8_t* edge_b,
                         const double* couplings, std::size_t edges, std::uint32_t first,
                         std::size_t count, double* out);

  double (*dot)(const double* a, const double* b, std::size_t n);

  // out[0..width) += sum_k table[offsets[k] .. offsets[k] + width)
  void (*gather_add)(const double* table, const std::uint32_t* offsets, std::size_t count,
                     std::size_t width, double* out);

  // table[offsets[k] .. offsets[k] + width) += alpha * v, for every k
  void (*scatter_axpy)(double* table, const std::uint32_t* offsets, std::size_t count,
                       std::size_t width, double alpha, const double* v);

  // y[0..n) += alpha * x
  void (*axpy)(double* y, const double* x, std::size_t n, double alpha);
};

const Kernels& scalar_kernels() noexcept;

/// AVX2 table, or nullptr when it was not compiled in or the CPU lacks AVX2.
const Kernels* avx2_kernels() noexcept;

/// Every variant usable on this machine, scalar first.
std::vector<const Kernels*> available_kernels();

/// Table used by the library. Defaults to the widest supported variant.
const Kernels& active() noexcept;

/// Forces a backend. Returns false (and changes nothing) if it is unavailable.
bool select(Backend backend) noexcept;

// Span conveniences over the active table.
inline std::int64_t labs_energy(std::span<const std::int8_t> s) {
  return active().labs_energy(s.data(), s.size());
}
inline double dot(std::span<const double> a, std::span<const double> b) {
  return active().dot(a.data(), b.data(), a.size());
}

namespace detail {
// Defined in kernels_scalar.cpp / kernels_avx2.cpp.
extern const Kernels kScalar;
#if defined(L2S_HAVE_AVX2)
extern const Kernels kAvx2;
#endif
}  // namespace detail

}  // namespace l2s::simd
