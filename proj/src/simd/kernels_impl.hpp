#pragma once

#include <cstddef>

namespace mabbob::simd::scalar {
void matvec(const double* m, const double* x, double* out, std::size_t rows, std::size_t cols);
void shift(const double* x, const double* from, const double* to, double* out, std::size_t n);
void scale(const double* x, const double* d, double* out, std::size_t n);
void add_scaled(const double* base, const double* dir, double step, double* out, std::size_t n);
void difference_step(const double* a, const double* b, const double* c, double f, double* out,
                     std::size_t n);
void clamp(double* x, std::size_t n, double lo, double hi);
double peak_max(const double* z, const double* centers, const double* cond, const double* bias,
                std::size_t peaks, std::size_t dim, double factor);
}  // namespace mabbob::simd::scalar

namespace mabbob::simd::avx2 {
void matvec(const double* m, const double* x, double* out, std::size_t rows, std::size_t cols);
void shift(const double* x, const double* from, const double* to, double* out, std::size_t n);
void scale(const double* x, const double* d, double* out, std::size_t n);
void add_scaled(const double* base, const double* dir, double step, double* out, std::size_t n);
void difference_step(const double* a, const double* b, const double* c, double f, double* out,
                     std::size_t n);
void clamp(double* x, std::size_t n, double lo, double hi);
double peak_max(const double* z, const double* centers, const double* cond, const double* bias,
                std::size_t peaks, std::size_t dim, double factor);
}  // namespace mabbob::simd::avx2
