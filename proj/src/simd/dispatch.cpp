#include <atomic>

#include "trigsum/simd/kernels.hpp"

namespace trigsum::simd {
namespace {

const KernelTable* detect() noexcept {
#if defined(TRIGSUM_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) return &avx2_table();
#endif
  return &scalar_table();
}

std::atomic<const KernelTable*>& active() noexcept {
  static std::atomic<const KernelTable*> table{detect()};
  return table;
}

}  // namespace

std::string_view to_string(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
  }
  return "unknown";
}

bool isa_supported(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
      return detect()->isa == Isa::avx2;
  }
  return false;
}

const KernelTable& kernels() noexcept { return *active().load(std::memory_order_acquire); }

bool force_isa(Isa isa) noexcept {
  if (!isa_supported(isa)) return false;
#if defined(TRIGSUM_HAVE_AVX2)
  if (isa == Isa::avx2) {
    active().store(&avx2_table(), std::memory_order_release);
    return true;
  }
#endif
  active().store(&scalar_table(), std::memory_order_release);
  return true;
}

Isa active_isa() noexcept { return kernels().isa; }

}  // namespace trigsum::simd
