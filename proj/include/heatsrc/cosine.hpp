#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "heatsrc/grid.hpp"

namespace heatsrc {

/// Coefficients d_0..d_M of f(x) = sum_m d_m cos(m pi x) on [0, 1].
class CosineSpectrum {
 public:
  /// Throws DomainError when empty or non-finite.
  explicit CosineSpectrum(std::vector<double> coeffs);

  std::size_t size() const noexcept { return coeffs_.size(); }
  /// Highest mode number M.
  std::size_t max_mode() const noexcept { return coeffs_.size() - 1; }
  double operator[](std::size_t m) const noexcept { return coeffs_[m]; }
  /// Coefficient m, or 0 beyond the stored modes.
  double at_or_zero(std::size_t m) const noexcept { return m < coeffs_.size() ? coeffs_[m] : 0.0; }
  std::span<const double> coeffs() const noexcept { return coeffs_; }

  /// Modes 0..m (zero-padded if m exceeds max_mode()).
  CosineSpectrum truncated(std::size_t m) const;

 private:
  std::vector<double> coeffs_;
};

struct AnalyzeOptions {
  /// Resolution guard: require n_cells >= min_cells_per_mode * m_max.
  /// The default keeps at least 4 nodes per half-wave of the top mode.
  double min_cells_per_mode = 4.0;
};

/// Cosine coefficients by composite Simpson on g's grid:
/// d_0 = int g, d_m = 2 int g cos(m pi x).
/// Throws DomainError if g's grid is not [0, 1], ResolutionError if the
/// guard fails or m_max >= n_cells, QuadratureConfigError for odd n_cells.
CosineSpectrum analyze(const GridFunction& g, std::size_t m_max, AnalyzeOptions opts = {});

/// Cosine coefficients of a piecewise smooth callable. Each piece between
/// breakpoints is integrated separately (one-sided limits at the ends), so
/// jumps and kinks at the breakpoints are handled at full Simpson order.
CosineSpectrum analyze_function(const std::function<double(double)>& fn, std::size_t m_max,
                                std::span<const double> breakpoints = {},
                                std::size_t cells_per_unit = 4000);

/// values[i] = sum_m d_m cos(m pi x_i) on a grid over [0, 1].
GridFunction synthesize(const CosineSpectrum& s, const Grid1D& grid);

/// (int_0^1 g^2)^{1/2} by composite Simpson. Throws QuadratureConfigError for odd n_cells.
double l2_norm(const GridFunction& g);

/// L2(0,1) norm of the series from its coefficients (Parseval):
/// (d_0^2 + 1/2 sum_{m>=1} d_m^2)^{1/2}.
double spectral_l2_norm(const CosineSpectrum& s);

/// (sum_m (1 + m^2)^p d_m^2)^{1/2}.
double hp_norm(const CosineSpectrum& s, double p);

/// cos(m pi x_i) for a grid over [0, 1]; exact argument reduction when x_i = i / n.
std::vector<double> cosine_row(const Grid1D& grid, std::size_t m);

}  // namespace heatsrc
