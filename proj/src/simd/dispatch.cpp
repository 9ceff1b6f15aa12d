#include <atomic>

#include "l2s/simd/kernels.hpp"

namespace l2s::simd {
namespace {

bool cpu_has_avx2() noexcept {
#if defined(L2S_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const Kernels* widest() noexcept {
  if (const Kernels* k = avx2_kernels()) return k;
  return &scalar_kernels();
}

std::atomic<const Kernels*>& current() noexcept {
  static std::atomic<const Kernels*> table{widest()};
  return table;
}

}  // namespace

std::string_view backend_name(Backend backend) noexcept {
  switch (backend) {
    case Backend::scalar:
      return "scalar";
    case Backend::avx2:
      return "avx2";
  }
  return "unknown";
}

const Kernels& scalar_kernels() noexcept { return detail::kScalar; }

const Kernels* avx2_kernels() noexcept {
#if defined(L2S_HAVE_AVX2)
  static const bool supported = cpu_has_avx2();
  return supported ? &detail::kAvx2 : nullptr;
#else
  return nullptr;
#endif
}

std::vector<const Kernels*> available_kernels() {
  std::vector<const Kernels*> out{&scalar_kernels()};
  if (const Kernels* k = avx2_kernels()) out.push_back(k);
  return out;
}

const Kernels& active() noexcept { return *current().load(std::memory_order_acquire); }

bool select(Backend backend) noexcept {
  const Kernels* table = backend == Backend::scalar ? &scalar_kernels() : avx2_kernels();
  if (!table) return false;
  current().store(table, std::memory_order_release);
  return true;
}

}  // namespace l2s::simd
