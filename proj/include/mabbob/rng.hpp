#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>

namespace mabbob {

// SplitMix64 finalizer. Used to turn structured keys (fid, iid, dim, ...)
// into well-spread engine seeds.
std::uint64_t mix64(std::uint64_t x) noexcept;

// Deterministically combines a list of integers into one 64-bit seed.
std::uint64_t derive_seed(std::initializer_list<std::uint64_t> parts) noexcept;

// Seeded random source with portable variate generation.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the
// standard. The std::*_distribution templates are not, so every variate
// here is produced from raw engine output with a fixed recipe; the same
// seed yields the same numbers on every standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [lo, hi] (inclusive), unbiased.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

  // Standard normal via Box-Muller; the second variate is cached.
  double normal();

  template <typename T>
  void shuffle(std::span<T> values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(uniform_int(0, static_cast<std::int64_t>(i) - 1));
      std::swap(values[i - 1], values[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

}  // namespace mabbob
