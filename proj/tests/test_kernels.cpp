#include <doctest.h>

#include <cstring>
#include <vector>

#include "mabbob/rng.hpp"
#include "mabbob/simd/kernels.hpp"

using namespace mabbob;

namespace {

std::vector<double> random_vector(Rng& rng, std::size_t n, double scale = 10.0) {
  std::vector<double> v(n);
  for (auto& x : v) {
    x = scale * (rng.uniform() - 0.5);
  }
  return v;
}

bool bitwise_equal(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

bool bitwise_equal(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

// Exact agreement of every variant with the scalar reference on random shapes,
// including lengths that exercise the vector tails.
void check_equivalent(const simd::KernelTable& ref, const simd::KernelTable& alt) {
  Rng rng(20240517);
  for (int trial = 0; trial < 300; ++trial) {
    const auto n = static_cast<std::size_t>(rng.uniform_int(1, 37));
    const auto a = random_vector(rng, n);
    const auto b = random_vector(rng, n);
    const auto c = random_vector(rng, n);
    const double f = rng.uniform();

    std::vector<double> m = random_vector(rng, n * n);
    std::vector<double> r1(n), r2(n);
    ref.matvec(m.data(), a.data(), r1.data(), n, n);
    alt.matvec(m.data(), a.data(), r2.data(), n, n);
    REQUIRE(bitwise_equal(r1, r2));

    ref.shift(a.data(), b.data(), c.data(), r1.data(), n);
    alt.shift(a.data(), b.data(), c.data(), r2.data(), n);
    REQUIRE(bitwise_equal(r1, r2));

    ref.scale(a.data(), b.data(), r1.data(), n);
    alt.scale(a.data(), b.data(), r2.data(), n);
    REQUIRE(bitwise_equal(r1, r2));

    ref.add_scaled(a.data(), b.data(), f, r1.data(), n);
    alt.add_scaled(a.data(), b.data(), f, r2.data(), n);
    REQUIRE(bitwise_equal(r1, r2));

    ref.difference_step(a.data(), b.data(), c.data(), f, r1.data(), n);
    alt.difference_step(a.data(), b.data(), c.data(), f, r2.data(), n);
    REQUIRE(bitwise_equal(r1, r2));

    r1 = a;
    r2 = a;
    ref.clamp(r1.data(), n, -2.0, 3.0);
    alt.clamp(r2.data(), n, -2.0, 3.0);
    REQUIRE(bitwise_equal(r1, r2));

    const auto peaks = static_cast<std::size_t>(rng.uniform_int(1, 130));
    const auto centers = random_vector(rng, n * peaks);
    auto cond = random_vector(rng, n * peaks);
    for (auto& v : cond) v = std::abs(v);
    const auto bias = random_vector(rng, peaks, 3.0);
    const double pm1 = ref.peak_max(a.data(), centers.data(), cond.data(), bias.data(), peaks, n, -0.3);
    const double pm2 = alt.peak_max(a.data(), centers.data(), cond.data(), bias.data(), peaks, n, -0.3);
    REQUIRE(bitwise_equal(pm1, pm2));
  }
}

}  // namespace

TEST_CASE("scalar reference kernels compute the documented formulas") {
  const auto& k = simd::scalar_kernels();
  // Column-major [[1, 2], [3, 4]].
  const double m[] = {1.0, 3.0, 2.0, 4.0};
  const double x[] = {1.0, -1.0};
  double out[2];
  k.matvec(m, x, out, 2, 2);
  CHECK(out[0] == -1.0);
  CHECK(out[1] == -1.0);

  const double from[] = {0.5, 0.5};
  const double to[] = {2.0, -2.0};
  k.shift(x, from, to, out, 2);
  CHECK(out[0] == 2.5);
  CHECK(out[1] == -3.5);

  double v[] = {-7.0, 0.25, 9.0};
  k.clamp(v, 3, -5.0, 5.0);
  CHECK(v[0] == -5.0);
  CHECK(v[1] == 0.25);
  CHECK(v[2] == 5.0);

  // Two peaks in 1-d: bias 0 at 0, bias 1 at 2; factor -1 -> max(-z^2, 1 - (z-2)^2).
  const double centers[] = {0.0, 2.0};
  const double cond[] = {1.0, 1.0};
  const double bias[] = {0.0, 1.0};
  const double z = 0.0;
  CHECK(k.peak_max(&z, centers, cond, bias, 2, 1, -1.0) == 0.0);
  const double z2 = 2.0;
  CHECK(k.peak_max(&z2, centers, cond, bias, 2, 1, -1.0) == 1.0);
}

TEST_CASE("avx2 kernels are bit-identical to the scalar reference") {
  const auto* avx2 = simd::avx2_kernels();
  if (avx2 == nullptr) {
    MESSAGE("AVX2 variant unavailable on this build/CPU; skipping equivalence check");
    return;
  }
  check_equivalent(simd::scalar_kernels(), *avx2);
}

TEST_CASE("runtime selection switches the active table") {
  const auto original = simd::active().isa;
  REQUIRE(simd::select(simd::Isa::scalar));
  CHECK(simd::active().isa == simd::Isa::scalar);
  if (simd::avx2_kernels() != nullptr) {
    REQUIRE(simd::select(simd::Isa::avx2));
    CHECK(simd::active().isa == simd::Isa::avx2);
  } else {
    CHECK_FALSE(simd::select(simd::Isa::avx2));
    CHECK(simd::active().isa == simd::Isa::scalar);
  }
  simd::select(original);
}
