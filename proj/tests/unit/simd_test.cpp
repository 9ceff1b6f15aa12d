// Every compiled kernel variant against the scalar reference. Element-wise kernels
// must match bit for bit; reductions (dot) may reassociate and get a tolerance.

#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "l2s/simd/kernels.hpp"

using namespace l2s::simd;

namespace {

std::vector<double> random_doubles(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

std::int64_t naive_energy(const std::vector<std::int8_t>& s) {
  std::int64_t e = 0;
  for (std::size_t k = 1; k < s.size(); ++k) {
    std::int64_t c = 0;
    for (std::size_t i = 0; i + k < s.size(); ++i) c += s[i] * s[i + k];
    e += c * c;
  }
  return e;
}

class KernelVariants : public ::testing::TestWithParam<const Kernels*> {};

std::string variant_name(const ::testing::TestParamInfo<const Kernels*>& info) {
  return std::string(backend_name(info.param->backend));
}

}  // namespace

TEST(Dispatch, ScalarAlwaysAvailable) {
  const auto all = available_kernels();
  ASSERT_FALSE(all.empty());
  EXPECT_EQ(all.front()->backend, Backend::scalar);
  EXPECT_TRUE(select(Backend::scalar));
  EXPECT_EQ(active().backend, Backend::scalar);
  if (avx2_kernels()) {
    EXPECT_TRUE(select(Backend::avx2));
    EXPECT_EQ(active().backend, Backend::avx2);
  } else {
    EXPECT_FALSE(select(Backend::avx2));
    EXPECT_EQ(active().backend, Backend::scalar);
  }
}

TEST_P(KernelVariants, LabsEnergy) {
  const Kernels& k = *GetParam();
  std::mt19937_64 rng(1);
  std::bernoulli_distribution coin(0.5);
  for (std::size_t n : {1, 2, 3, 4, 7, 8, 13, 16, 17, 31, 32, 33, 64, 100, 257}) {
    for (int rep = 0; rep < 10; ++rep) {
      std::vector<std::int8_t> s(n);
      for (auto& v : s) v = coin(rng) ? 1 : -1;
      EXPECT_EQ(k.labs_energy(s.data(), n), naive_energy(s)) << "n=" << n;
    }
  }
  const std::vector<std::int8_t> three{1, 1, 1};
  EXPECT_EQ(k.labs_energy(three.data(), 3), 5);
  const std::vector<std::int8_t> four{1, 1, 1, -1};
  EXPECT_EQ(k.labs_energy(four.data(), 4), 2);
}

TEST_P(KernelVariants, IsingEnergiesBitIdentical) {
  const Kernels& k = *GetParam();
  std::mt19937_64 rng(2);
  const std::size_t nodes = 12;
  std::vector<std::uint8_t> a, b;
  for (std::uint8_t i = 0; i < nodes; ++i)
    for (std::uint8_t j = i + 1; j < nodes; j += 3) {
      a.push_back(i);
      b.push_back(j);
    }
  const auto J = random_doubles(a.size(), rng);
  for (std::uint32_t first : {0u, 5u, 1000u}) {
    for (std::size_t count : {1, 7, 8, 9, 63, 1000}) {
      std::vector<double> ref(count), got(count);
      scalar_kernels().ising_energies(a.data(), b.data(), J.data(), a.size(), first, count,
                                      ref.data());
      k.ising_energies(a.data(), b.data(), J.data(), a.size(), first, count, got.data());
      for (std::size_t i = 0; i < count; ++i) ASSERT_EQ(got[i], ref[i]);
    }
  }
}

TEST(ScalarKernels, IsingEnergySpinConvention) {
  // One edge 0-1, J = 2: states 00 and 11 are aligned (+2), 01 and 10 anti-aligned (-2).
  const std::uint8_t a = 0, b = 1;
  const double J = 2.0;
  double out[4];
  scalar_kernels().ising_energies(&a, &b, &J, 1, 0, 4, out);
  EXPECT_EQ(out[0], 2.0);
  EXPECT_EQ(out[1], -2.0);
  EXPECT_EQ(out[2], -2.0);
  EXPECT_EQ(out[3], 2.0);
}

TEST_P(KernelVariants, DotWithinReassociationTolerance) {
  const Kernels& k = *GetParam();
  std::mt19937_64 rng(3);
  for (std::size_t n : {0, 1, 3, 4, 5, 15, 16, 17, 100, 1001}) {
    const auto x = random_doubles(n, rng);
    const auto y = random_doubles(n, rng);
    double ref = 0.0, mag = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      ref += x[i] * y[i];
      mag += std::abs(x[i] * y[i]);
    }
    EXPECT_NEAR(k.dot(x.data(), y.data(), n), ref, 1e-14 * (mag + 1.0)) << "n=" << n;
  }
}

TEST_P(KernelVariants, GatherAddBitIdentical) {
  const Kernels& k = *GetParam();
  std::mt19937_64 rng(4);
  for (std::size_t width : {1, 3, 4, 8, 32, 37}) {
    const std::size_t columns = 20;
    const auto table = random_doubles(columns * width, rng);
    std::vector<std::uint32_t> offsets;
    for (std::uint32_t c = 0; c < columns; c += 2) offsets.push_back(c * width);
    const auto init = random_doubles(width, rng);
    auto ref = init, got = init;
    scalar_kernels().gather_add(table.data(), offsets.data(), offsets.size(), width, ref.data());
    k.gather_add(table.data(), offsets.data(), offsets.size(), width, got.data());
    EXPECT_EQ(got, ref) << "width=" << width;
  }
}

TEST_P(KernelVariants, ScatterAxpyBitIdentical) {
  const Kernels& k = *GetParam();
  std::mt19937_64 rng(5);
  for (std::size_t width : {1, 3, 4, 8, 32, 37}) {
    const std::size_t columns = 10;
    auto ref = random_doubles(columns * width, rng);
    auto got = ref;
    const auto v = random_doubles(width, rng);
    const std::vector<std::uint32_t> offsets{0, static_cast<std::uint32_t>(3 * width),
                                             static_cast<std::uint32_t>(9 * width)};
    scalar_kernels().scatter_axpy(ref.data(), offsets.data(), offsets.size(), width, -0.37,
                                  v.data());
    k.scatter_axpy(got.data(), offsets.data(), offsets.size(), width, -0.37, v.data());
    EXPECT_EQ(got, ref) << "width=" << width;
  }
}

TEST_P(KernelVariants, AxpyBitIdentical) {
  const Kernels& k = *GetParam();
  std::mt19937_64 rng(6);
  for (std::size_t n : {0, 1, 3, 4, 7, 8, 9, 100}) {
    auto ref = random_doubles(n, rng);
    auto got = ref;
    const auto x = random_doubles(n, rng);
    scalar_kernels().axpy(ref.data(), x.data(), n, 1.7);
    k.axpy(got.data(), x.data(), n, 1.7);
    EXPECT_EQ(got, ref) << "n=" << n;
  }
}

INSTANTIATE_TEST_SUITE_P(All, KernelVariants, ::testing::ValuesIn(available_kernels()),
                         variant_name);
