#include "heatsrc/simd/kernels.hpp"

#include <cmath>

namespace heatsrc::simd {
namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

double dot3_scalar(const double* w, const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += w[i] * a[i] * b[i];
  return s;
}

double weighted_sq_diff_scalar(const double* w, const double* a, const double* b,
                               std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = a[i] - b[i];
    s += w[i] * d * d;
  }
  return s;
}

void axpy_scalar(double* y, double alpha, const double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = std::fma(alpha, x[i], y[i]);
}

void relax_scalar(double* w, const double* lambda, const double* target, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) w[i] = std::fma(lambda[i], target[i] - w[i], w[i]);
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{"scalar",           dot_scalar,  dot3_scalar,
                                 weighted_sq_diff_scalar, axpy_scalar, relax_scalar};
  return table;
}

}  // namespace heatsrc::simd
