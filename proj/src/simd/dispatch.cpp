#include "mabbob/simd/kernels.hpp"

#include <atomic>

#include "kernels_impl.hpp"

namespace mabbob::simd {
namespace {

constexpr KernelTable kScalar{
    Isa::scalar,         scalar::matvec, scalar::shift, scalar::scale, scalar::add_scaled,
    scalar::difference_step, scalar::clamp, scalar::peak_max,
};

#if defined(MABBOB_HAVE_AVX2)
constexpr KernelTable kAvx2{
    Isa::avx2,         avx2::matvec, avx2::shift, avx2::scale, avx2::add_scaled,
    avx2::difference_step, avx2::clamp, avx2::peak_max,
};

bool cpu_has_avx2() noexcept {
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
}
#endif

const KernelTable* detect() noexcept {
#if defined(MABBOB_HAVE_AVX2)
  if (cpu_has_avx2()) {
    return &kAvx2;
  }
#endif
  return &kScalar;
}

std::atomic<const KernelTable*>& current() noexcept {
  static std::atomic<const KernelTable*> table{detect()};
  return table;
}

}  // namespace

std::string_view isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
  }
  return "unknown";
}

const KernelTable& scalar_kernels() noexcept { return kScalar; }

const KernelTable* avx2_kernels() noexcept {
#if defined(MABBOB_HAVE_AVX2)
  static const bool supported = cpu_has_avx2();
  return supported ? &kAvx2 : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active() noexcept { return *current().load(std::memory_order_relaxed); }

bool select(Isa isa) noexcept {
  const KernelTable* table = nullptr;
  switch (isa) {
    case Isa::scalar:
      table = &kScalar;
      break;
    case Isa::avx2:
      table = avx2_kernels();
      break;
  }
  if (table == nullptr) {
    return false;
  }
  current().store(table, std::memory_order_relaxed);
  return true;
}

}  // namespace mabbob::simd
