#include <cassert>
#include <cstdlib>
#include <string_view>

#include "heatsrc/simd/kernels.hpp"

namespace heatsrc::simd {

#if defined(HEATSRC_HAVE_AVX2)
const KernelTable& avx2_kernel_table();
#endif

const KernelTable* avx2_kernels() {
#if defined(HEATSRC_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return supported ? &avx2_kernel_table() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active_kernels() {
  static const KernelTable& table = [] () -> const KernelTable& {
    const char* env = std::getenv("HEATSRC_SIMD");
    if (env != nullptr && std::string_view(env) == "scalar") return scalar_kernels();
    if (const KernelTable* wide = avx2_kernels()) return *wide;
    return scalar_kernels();
  }();
  return table;
}

double dot(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  return active_kernels().dot(a.data(), b.data(), a.size());
}

double dot3(std::span<const double> w, std::span<const double> a, std::span<const double> b) {
  assert(w.size() == a.size() && a.size() == b.size());
  return active_kernels().dot3(w.data(), a.data(), b.data(), a.size());
}

double weighted_sq_diff(std::span<const double> w, std::span<const double> a,
                        std::span<const double> b) {
  assert(w.size() == a.size() && a.size() == b.size());
  return active_kernels().weighted_sq_diff(w.data(), a.data(), b.data(), a.size());
}

void axpy(std::span<double> y, double alpha, std::span<const double> x) {
  assert(y.size() == x.size());
  active_kernels().axpy(y.data(), alpha, x.data(), y.size());
}

void relax(std::span<double> w, std::span<const double> lambda, std::span<const double> target) {
  assert(w.size() == lambda.size() && w.size() == target.size());
  active_kernels().relax(w.data(), lambda.data(), target.data(), w.size());
}

}  // namespace heatsrc::simd
