#include "kernels_impl.hpp"

#include <algorithm>
#include <limits>

namespace mabbob::simd::scalar {

void matvec(const double* m, const double* x, double* out, std::size_t rows, std::size_t cols) {
  for (std::size_t i = 0; i < rows; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < cols; ++j) {
      const double t = m[j * rows + i] * x[j];
      acc = acc + t;
    }
    out[i] = acc;
  }
}

void shift(const double* x, const double* from, const double* to, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = (x[i] - from[i]) + to[i];
  }
}

void scale(const double* x, const double* d, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = x[i] * d[i];
  }
}

void add_scaled(const double* base, const double* dir, double step, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double t = step * dir[i];
    out[i] = base[i] + t;
  }
}

void difference_step(const double* a, const double* b, const double* c, double f, double* out,
                     std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double t = f * (b[i] - c[i]);
    out[i] = a[i] + t;
  }
}

void clamp(double* x, std::size_t n, double lo, double hi) {
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = std::min(std::max(x[i], lo), hi);
  }
}

double peak_max(const double* z, const double* centers, const double* cond, const double* bias,
                std::size_t peaks, std::size_t dim, double factor) {
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t p = 0; p < peaks; ++p) {
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

}  // namespace mabbob::simd::scalar
