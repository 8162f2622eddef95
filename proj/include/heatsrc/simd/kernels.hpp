#pragma once

#include <cstddef>
#include <span>
#include <string_view>

// Data-parallel inner loops shared by the quadrature, synthesis and
// relaxation code. Each kernel has a scalar reference implementation and an
// AVX2+FMA variant; the variant is picked once at runtime.
//
// Elementwise kernels (axpy, relax) use fused multiply-add in both variants,
// so they agree bit for bit. Reductions reassociate and agree only to
// rounding.

namespace heatsrc::simd {

struct KernelTable {
  std::string_view name;

  /// sum_i a[i] * b[i]
  double (*dot)(const double* a, const double* b, std::size_t n);

  /// sum_i w[i] * a[i] * b[i]
  double (*dot3)(const double* w, const double* a, const double* b, std::size_t n);

  /// sum_i w[i] * (a[i] - b[i])^2
  double (*weighted_sq_diff)(const double* w, const double* a, const double* b,
                             std::size_t n);

  /// y[i] += alpha * x[i]
  void (*axpy)(double* y, double alpha, const double* x, std::size_t n);

  /// w[i] += lambda[i] * (target[i] - w[i])
  void (*relax)(double* w, const double* lambda, const double* target, std::size_t n);
};

const KernelTable& scalar_kernels();

/// nullptr when the AVX2 variant is not compiled in or the CPU lacks AVX2/FMA.
const KernelTable* avx2_kernels();

/// The table used by the library. Defaults to the widest supported variant;
/// HEATSRC_SIMD=scalar in the environment forces the reference kernels.
const KernelTable& active_kernels();

// Span wrappers over active_kernels(). Sizes must match.
double dot(std::span<const double> a, std::span<const double> b);
double dot3(std::span<const double> w, std::span<const double> a, std::span<const double> b);
double weighted_sq_diff(std::span<const double> w, std::span<const double> a,
                        std::span<const double> b);
void axpy(std::span<double> y, double alpha, std::span<const double> x);
void relax(std::span<double> w, std::span<const double> lambda, std::span<const double> target);

}  // namespace heatsrc::simd
