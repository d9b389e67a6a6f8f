#pragma once
// Data-parallel inner loops shared by the component functions, the
// generators and the baseline optimizers.
//
// Every kernel is lane-parallel: each output element is produced by the same
// sequence of IEEE operations in the scalar reference and in the vector
// variants (no horizontal reductions, no fused multiply-add). The variants are
// therefore bit-identical, and results do not depend on which one the
// dispatcher picked on a given machine.

#include <cassert>
#include <cstddef>
#include <span>
#include <string_view>

namespace mabbob::simd {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa) noexcept;

struct KernelTable {
  Isa isa;

  // out = M x for a column-major rows x cols matrix; out[i] accumulates
  // M(i, j) * x[j] in increasing j.
  void (*matvec)(const double* m, const double* x, double* out, std::size_t rows,
                 std::size_t cols);

  // out = (x - from) + to
  void (*shift)(const double* x, const double* from, const double* to, double* out,
                std::size_t n);

  // out = x * d (elementwise)
  void (*scale)(const double* x, const double* d, double* out, std::size_t n);

  // out = base + step * dir
  void (*add_scaled)(const double* base, const double* dir, double step, double* out,
                     std::size_t n);

  // out = a + f * (b - c)
  void (*difference_step)(const double* a, const double* b, const double* c, double f,
                          double* out, std::size_t n);

  // x = min(max(x, lo), hi)
  void (*clamp)(double* x, std::size_t n, double lo, double hi);

  // max over peaks p of bias[p] + factor * sum_j cond[j*peaks+p] * (z[j] - centers[j*peaks+p])^2
  // (structure-of-arrays, peaks contiguous per coordinate).
  double (*peak_max)(const double* z, const double* centers, const double* cond,
                     const double* bias, std::size_t peaks, std::size_t dim, double factor);
};

const KernelTable& scalar_kernels() noexcept;

// nullptr when the variant was not compiled in or the CPU lacks it.
const KernelTable* avx2_kernels() noexcept;

// Table used by the library. Picks the widest supported variant on first use.
const KernelTable& active() noexcept;

// Overrides the runtime choice. Returns false (and changes nothing) when the
// requested variant is unavailable.
bool select(Isa isa) noexcept;

inline void matvec(std::span<const double> m, std::span<const double> x, std::span<double> out) {
  assert(m.size() == out.size() * x.size());
  active().matvec(m.data(), x.data(), out.data(), out.size(), x.size());
}

inline void shift(std::span<const double> x, std::span<const double> from,
                  std::span<const double> to, std::span<double> out) {
  assert(x.size() == from.size() && x.size() == to.size() && x.size() == out.size());
  active().shift(x.data(), from.data(), to.data(), out.data(), out.size());
}

inline void clamp(std::span<double> x, double lo, double hi) {
  active().clamp(x.data(), x.size(), lo, hi);
}

}  // namespace mabbob::simd
