// AVX2 variants. This translation unit is compiled with -mavx2 and must only be
// reached through the dispatch table after a CPU check. Element-wise kernels keep
// the scalar operation order (no FMA contraction), so they match the scalar
// reference bit for bit; only dot() reassociates its reduction.

#include <immintrin.h>

#include "l2s/simd/kernels.hpp"

namespace l2s::simd {
namespace {

inline std::int32_t horizontal_sum(__m256i v) {
  __m128i lo = _mm256_castsi256_si128(v);
  __m128i hi = _mm256_extracti128_si256(v, 1);
  __m128i sum = _mm_add_epi32(lo, hi);
  sum = _mm_add_epi32(sum, _mm_shuffle_epi32(sum, _MM_SHUFFLE(1, 0, 3, 2)));
  sum = _mm_add_epi32(sum, _mm_shuffle_epi32(sum, _MM_SHUFFLE(2, 3, 0, 1)));
  return _mm_cvtsi128_si32(sum);
}

inline double horizontal_sum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  __m128d sum = _mm_add_pd(lo, hi);
  sum = _mm_add_sd(sum, _mm_unpackhi_pd(sum, sum));
  return _mm_cvtsd_f64(sum);
}

std::int64_t labs_energy_avx2(const std::int8_t* s, std::size_t n) {
  std::int64_t energy = 0;
  for (std::size_t k = 1; k < n; ++k) {
    const std::size_t terms = n - k;
    __m256i acc = _mm256_setzero_si256();
    std::size_t i = 0;
    for (; i + 8 <= terms; i += 8) {
      __m256i a = _mm256_cvtepi8_epi32(_mm_loadl_epi64(reinterpret_cast<const __m128i*>(s + i)));
      __m256i b =
          _mm256_cvtepi8_epi32(_mm_loadl_epi64(reinterpret_cast<const __m128i*>(s + i + k)));
      acc = _mm256_add_epi32(acc, _mm256_mullo_epi32(a, b));
    }
    std::int64_t c = horizontal_sum(acc);
    for (; i < terms; ++i) c += s[i] * s[i + k];
    energy += c * c;
  }
  return energy;
}

void ising_energies_avx2(const std::uint8_t* edge_a, const std::uint8_t* edge_b,
                         const double* couplings, std::size_t edges, std::uint32_t first,
                         std::size_t count, double* out) {
  const __m256i lane = _mm256_setr_epi32(0, 1, 2, 3, 4, 5, 6, 7);
  const __m256i one = _mm256_set1_epi32(1);
  std::size_t k = 0;
  for (; k + 8 <= count; k += 8) {
    const __m256i state =
        _mm256_add_epi32(_mm256_set1_epi32(static_cast<int>(first + k)), lane);
    __m256d lo = _mm256_setzero_pd();
    __m256d hi = _mm256_setzero_pd();
    for (std::size_t e = 0; e < edges; ++e) {
      const __m256i a = _mm256_srlv_epi32(state, _mm256_set1_epi32(edge_a[e]));
      const __m256i b = _mm256_srlv_epi32(state, _mm256_set1_epi32(edge_b[e]));
      const __m256i differ = _mm256_and_si256(_mm256_xor_si256(a, b), one);
      const __m256i sign = _mm256_sub_epi32(one, _mm256_slli_epi32(differ, 1));
      const __m256d j = _mm256_set1_pd(couplings[e]);
      lo = _mm256_add_pd(lo, _mm256_mul_pd(j, _mm256_cvtepi32_pd(_mm256_castsi256_si128(sign))));
      hi = _mm256_add_pd(hi,
                         _mm256_mul_pd(j, _mm256_cvtepi32_pd(_mm256_extracti128_si256(sign, 1))));
    }
    _mm256_storeu_pd(out + k, lo);
    _mm256_storeu_pd(out + k + 4, hi);
  }
  if (k < count)
    detail::kScalar.ising_energies(edge_a, edge_b, couplings, edges,
                                   first + static_cast<std::uint32_t>(k), count - k, out + k);
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
    acc1 = _mm256_add_pd(acc1,
                         _mm256_mul_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4)));
  }
  double sum = horizontal_sum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) sum += a[i] * b[i];
  return sum;
}

void gather_add_avx2(const double* table, const std::uint32_t* offsets, std::size_t count,
                     std::size_t width, double* out) {
  std::size_t j = 0;
  for (; j + 4 <= width; j += 4) {
    __m256d acc = _mm256_loadu_pd(out + j);
    for (std::size_t k = 0; k < count; ++k)
      acc = _mm256_add_pd(acc, _mm256_loadu_pd(table + offsets[k] + j));
    _mm256_storeu_pd(out + j, acc);
  }
  for (; j < width; ++j)
    for (std::size_t k = 0; k < count; ++k) out[j] += table[offsets[k] + j];
}

void scatter_axpy_avx2(double* table, const std::uint32_t* offsets, std::size_t count,
                       std::size_t width, double alpha, const double* v) {
  const __m256d scale = _mm256_set1_pd(alpha);
  for (std::size_t k = 0; k < count; ++k) {
    double* column = table + offsets[k];
    std::size_t j = 0;
    for (; j + 4 <= width; j += 4) {
      const __m256d step = _mm256_mul_pd(scale, _mm256_loadu_pd(v + j));
      _mm256_storeu_pd(column + j, _mm256_add_pd(_mm256_loadu_pd(column + j), step));
    }
    for (; j < width; ++j) column[j] += alpha * v[j];
  }
}

void axpy_avx2(double* y, const double* x, std::size_t n, double alpha) {
  const __m256d scale = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d step = _mm256_mul_pd(scale, _mm256_loadu_pd(x + i));
    _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(y + i), step));
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

}  // namespace

namespace detail {
const Kernels kAvx2{Backend::avx2,   labs_energy_avx2,  ising_energies_avx2, dot_avx2,
                    gather_add_avx2, scatter_axpy_avx2, axpy_avx2};
}  // namespace detail

}  // namespace l2s::simd
