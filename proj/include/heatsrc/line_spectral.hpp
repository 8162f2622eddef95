#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "heatsrc/time_profile.hpp"

namespace heatsrc {

/// Uniform frequencies xi_j = -xi_max + j * 2 xi_max / n_bins, j = 0..n_bins.
/// n_bins is even, so xi = 0 is a node and the grid is symmetric.
class FreqGrid {
 public:
  FreqGrid(double xi_max, std::size_t n_bins);

  double xi_max() const noexcept { return xi_max_; }
  std::size_t n_bins() const noexcept { return n_bins_; }
  std::size_t size() const noexcept { return n_bins_ + 1; }
  double spacing() const noexcept { return 2.0 * xi_max_ / static_cast<double>(n_bins_); }
  double xi(std::size_t j) const noexcept;
  /// Index of the node nearest to xi.
  std::size_t index_of(double xi) const;

  friend bool operator==(const FreqGrid&, const FreqGrid&) = default;

 private:
  double xi_max_;
  std::size_t n_bins_;
};

using Complex = std::complex<double>;

/// Fourier-side samples (u^, mu0^, muT^, f^, g^) on a FreqGrid.
class FreqFunction {
 public:
  FreqFunction(FreqGrid grid, std::vector<Complex> values);

  template <class Fn>
  static FreqFunction sample(const FreqGrid& grid, Fn&& fn) {
    std::vector<Complex> v(grid.size());
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = fn(grid.xi(j));
    return FreqFunction(grid, std::move(v));
  }

  const FreqGrid& grid() const noexcept { return grid_; }
  std::span<const Complex> values() const noexcept { return values_; }
  Complex operator[](std::size_t j) const noexcept { return values_[j]; }
  std::size_t size() const noexcept { return values_.size(); }

  /// values[j] == conj(values[n - j]) within tol (transform of a real function).
  bool conjugate_symmetric(double tol = 0.0) const;

 private:
  FreqGrid grid_;
  std::vector<Complex> values_;
};

/// (int |F|^2 dxi)^{1/2} by the trapezoid rule on the frequency grid.
double freq_l2_norm(const FreqFunction& f);

/// Same norm for a difference; grids must match.
double freq_l2_distance(const FreqFunction& a, const FreqFunction& b);

/// u^(xi, t) = mu0^(xi) exp(-k xi^2 t) + f^(xi) phi(k xi^2, t).
FreqFunction line_forward(const FreqFunction& mu0_hat, const FreqFunction& f_hat,
                          const TimeProfile& h, double k, double t);

/// f^(xi) = (muT^ - mu0^ exp(-k xi^2 T)) / phi(k xi^2, T). Throws
/// SingularKernelError (carrying xi) where |phi| <= 1e-13 * int_0^T |h|.
FreqFunction line_invert_exact(const FreqFunction& mu0_hat, const FreqFunction& muT_hat,
                               const TimeProfile& h, double k, double T);

/// u^(xi, t) from the two end states, weighting mu0^ and muT^:
///   [exp(-k xi^2 t) - exp(-k xi^2 T) phi(t) / phi(T)] mu0^ + [phi(t) / phi(T)] muT^.
FreqFunction line_interpolate(const FreqFunction& mu0_hat, const FreqFunction& muT_hat,
                              const TimeProfile& h, double k, double t, double T);

}  // namespace heatsrc
