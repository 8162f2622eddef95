#include "heatsrc/cosine.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "heatsrc/error.hpp"
#include "heatsrc/quadrature.hpp"
#include "heatsrc/simd/kernels.hpp"

namespace heatsrc {

using std::numbers::pi;

CosineSpectrum::CosineSpectrum(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw DomainError("CosineSpectrum: need at least one coefficient");
  for (double c : coeffs_)
    if (!std::isfinite(c)) throw DomainError("CosineSpectrum: non-finite coefficient");
}

CosineSpectrum CosineSpectrum::truncated(std::size_t m) const {
  std::vector<double> c(m + 1, 0.0);
  std::copy_n(coeffs_.begin(), std::min(c.size(), coeffs_.size()), c.begin());
  return CosineSpectrum(std::move(c));
}

std::vector<double> cosine_row(const Grid1D& grid, std::size_t m) {
  std::vector<double> row(grid.size());
  if (grid.is_unit()) {
    // m pi i / n reduced modulo 2 pi in integers.
    const std::size_t n = grid.n_cells();
    const std::size_t period = 2 * n;
    for (std::size_t i = 0; i < row.size(); ++i) {
      const std::size_t k = (m % period) * i % period;
      row[i] = std::cos(pi * static_cast<double>(k) / static_cast<double>(n));
    }
  } else {
    for (std::size_t i = 0; i < row.size(); ++i)
      row[i] = std::cos(static_cast<double>(m) * pi * grid.node(i));
  }
  return row;
}

CosineSpectrum analyze(const GridFunction& g, std::size_t m_max, AnalyzeOptions opts) {
  const Grid1D& grid = g.grid();
  if (!grid.is_unit()) throw DomainError("analyze: grid must span [0, 1]");
  const auto n = static_cast<double>(grid.n_cells());
  if (m_max >= grid.n_cells() || n < opts.min_cells_per_mode * static_cast<double>(m_max))
    throw ResolutionError("analyze: mode " + std::to_string(m_max) + " is unresolved on a " +
                          std::to_string(grid.n_cells()) + "-cell grid");
  const auto w = quad::simpson_weights(grid);

  std::vector<double> coeffs(m_max + 1);
  for (std::size_t m = 0; m <= m_max; ++m) {
    const auto row = cosine_row(grid, m);
    coeffs[m] = (m == 0 ? 1.0 : 2.0) * simd::dot3(w, g.values(), row);
  }
  return CosineSpectrum(std::move(coeffs));
}

CosineSpectrum analyze_function(const std::function<double(double)>& fn, std::size_t m_max,
                                std::span<const double> breakpoints, std::size_t cells_per_unit) {
  std::vector<double> cuts{0.0};
  for (double bp : breakpoints)
    if (bp > 0.0 && bp < 1.0) cuts.push_back(bp);
  cuts.push_back(1.0);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<double> coeffs(m_max + 1, 0.0);
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double lo = cuts[k];
    const double hi = cuts[k + 1];
    const Grid1D piece(lo, hi, quad::even_at_least((hi - lo) * static_cast<double>(cells_per_unit)));
    const auto w = quad::simpson_weights(piece);
    const auto x = piece.nodes();
    std::vector<double> v(x.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = fn(x[i]);
    if (k > 0) v.front() = fn(std::nextafter(lo, hi));
    if (k + 2 < cuts.size()) v.back() = fn(std::nextafter(hi, lo));

    std::vector<double> row(x.size());
    for (std::size_t m = 0; m <= m_max; ++m) {
      for (std::size_t i = 0; i < x.size(); ++i) row[i] = std::cos(static_cast<double>(m) * pi * x[i]);
      coeffs[m] += (m == 0 ? 1.0 : 2.0) * simd::dot3(w, v, row);
    }
  }
  return CosineSpectrum(std::move(coeffs));
}

GridFunction synthesize(const CosineSpectrum& s, const Grid1D& grid) {
  if (grid.lo() < 0.0 || grid.hi() > 1.0) throw DomainError("synthesize: grid must lie in [0, 1]");
  std::vector<double> values(grid.size(), 0.0);
  for (std::size_t m = 0; m < s.size(); ++m) {
    if (s[m] == 0.0) continue;
    const auto row = cosine_row(grid, m);
    simd::axpy(values, s[m], row);
  }
  return GridFunction(grid, std::move(values));
}

double l2_norm(const GridFunction& g) {
  const auto w = quad::simpson_weights(g.grid());
  return std::sqrt(std::max(0.0, simd::dot3(w, g.values(), g.values())));
}

double spectral_l2_norm(const CosineSpectrum& s) {
  double sum = s[0] * s[0];
  for (std::size_t m = 1; m < s.size(); ++m) sum += 0.5 * s[m] * s[m];
  return std::sqrt(sum);
}

double hp_norm(const CosineSpectrum& s, double p) {
  if (!(p >= 0.0)) throw DomainError("hp_norm: p must be >= 0");
  double sum = 0.0;
  for (std::size_t m = 0; m < s.size(); ++m) {
    const auto mm = static_cast<double>(m);
    sum += std::pow(1.0 + mm * mm, p) * s[m] * s[m];
  }
  return std::sqrt(sum);
}

}  // namespace heatsrc
