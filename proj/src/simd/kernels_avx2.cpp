// Compiled with -mavx2 only. No FMA: each lane must round exactly like the
// scalar reference.
#include "kernels_impl.hpp"

#include <immintrin.h>

#include <algorithm>
#include <limits>

namespace mabbob::simd::avx2 {

void matvec(const double* m, const double* x, double* out, std::size_t rows, std::size_t cols) {
  std::size_t i = 0;
  for (; i + 4 <= rows; i += 4) {
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t j = 0; j < cols; ++j) {
      const __m256d col = _mm256_loadu_pd(m + j * rows + i);
      acc = _mm256_add_pd(acc, _mm256_mul_pd(col, _mm256_set1_pd(x[j])));
    }
    _mm256_storeu_pd(out + i, acc);
  }
  for (; i < rows; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < cols; ++j) {
      const double t = m[j * rows + i] * x[j];
      acc = acc + t;
    }
    out[i] = acc;
  }
}

void shift(const double* x, const double* from, const double* to, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(from + i));
    _mm256_storeu_pd(out + i, _mm256_add_pd(d, _mm256_loadu_pd(to + i)));
  }
  for (; i < n; ++i) {
    out[i] = (x[i] - from[i]) + to[i];
  }
}

void scale(const double* x, const double* d, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(d + i)));
  }
  for (; i < n; ++i) {
    out[i] = x[i] * d[i];
  }
}

void add_scaled(const double* base, const double* dir, double step, double* out, std::size_t n) {
  const __m256d s = _mm256_set1_pd(step);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d t = _mm256_mul_pd(s, _mm256_loadu_pd(dir + i));
    _mm256_storeu_pd(out + i, _mm256_add_pd(_mm256_loadu_pd(base + i), t));
  }
  for (; i < n; ++i) {
    const double t = step * dir[i];
    out[i] = base[i] + t;
  }
}

void difference_step(const double* a, const double* b, const double* c, double f, double* out,
                     std::size_t n) {
  const __m256d vf = _mm256_set1_pd(f);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d diff = _mm256_sub_pd(_mm256_loadu_pd(b + i), _mm256_loadu_pd(c + i));
    const __m256d t = _mm256_mul_pd(vf, diff);
    _mm256_storeu_pd(out + i, _mm256_add_pd(_mm256_loadu_pd(a + i), t));
  }
  for (; i < n; ++i) {
    const double t = f * (b[i] - c[i]);
    out[i] = a[i] + t;
  }
}

void clamp(double* x, std::size_t n, double lo, double hi) {
  const __m256d vlo = _mm256_set1_pd(lo);
  const __m256d vhi = _mm256_set1_pd(hi);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(x + i);
    _mm256_storeu_pd(x + i, _mm256_min_pd(_mm256_max_pd(v, vlo), vhi));
  }
  for (; i < n; ++i) {
    x[i] = std::min(std::max(x[i], lo), hi);
  }
}

double peak_max(const double* z, const double* centers, const double* cond, const double* bias,
                std::size_t peaks, std::size_t dim, double factor) {
  const __m256d vfactor = _mm256_set1_pd(factor);
  __m256d vbest = _mm256_set1_pd(-std::numeric_limits<double>::infinity());
  std::size_t p = 0;
  for (; p + 4 <= peaks; p += 4) {
    __m256d q = _mm256_setzero_pd();
    for (std::size_t j = 0; j < dim; ++j) {
      const __m256d d = _mm256_sub_pd(_mm256_set1_pd(z[j]), _mm256_loadu_pd(centers + j * peaks + p));
      const __m256d t = _mm256_mul_pd(_mm256_loadu_pd(cond + j * peaks + p), _mm256_mul_pd(d, d));
      q = _mm256_add_pd(q, t);
    }
    const __m256d v = _mm256_add_pd(_mm256_loadu_pd(bias + p), _mm256_mul_pd(vfactor, q));
    vbest = _mm256_max_pd(vbest, v);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, vbest);
  double best = std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
  for (; p < peaks; ++p) {
    double q = 0.0;
    for (std::size_t j = 0; j < dim; ++j) {
      const double d = z[j] - centers[j * peaks + p];
      const double t = cond[j * peaks + p] * (d * d);
      q = q + t;
    }
    const double t = factor * q;
    best = std::max(best, bias[p] + t);
  }
  return best;
}

}  // namespace mabbob::simd::avx2
