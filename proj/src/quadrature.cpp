#include "heatsrc/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "heatsrc/error.hpp"
#include "heatsrc/simd/kernels.hpp"

namespace heatsrc::quad {

std::vector<double> simpson_weights(const Grid1D& grid) {
  const std::size_t n = grid.n_cells();
  if (n % 2 != 0)
    throw QuadratureConfigError("composite Simpson needs an even cell count, got " +
                                std::to_string(n));
  const double h3 = grid.spacing() / 3.0;
  std::vector<double> w(n + 1);
  for (std::size_t i = 0; i <= n; ++i) w[i] = h3 * ((i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0));
  return w;
}

double simpson(const GridFunction& g) {
  const auto w = simpson_weights(g.grid());
  return simd::dot(w, g.values());
}

double simpson(const std::function<double(double)>& fn, double a, double b, std::size_t n_cells) {
  return simpson(GridFunction::sample(Grid1D(a, b, n_cells), fn));
}

std::size_t even_at_least(double n) {
  auto k = static_cast<std::size_t>(std::ceil(std::max(n, 2.0)));
  return k % 2 ? k + 1 : k;
}

double piecewise_simpson(const std::function<double(double)>& fn, double a, double b,
                         std::span<const double> breakpoints, std::size_t cells_per_unit) {
  std::vector<double> cuts{a};
  for (double bp : breakpoints)
    if (bp > a && bp < b) cuts.push_back(bp);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());

  double total = 0.0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double lo = cuts[k];
    const double hi = cuts[k + 1];
    if (!(hi > lo)) continue;
    const std::size_t n = even_at_least((hi - lo) * static_cast<double>(cells_per_unit));
    const Grid1D grid(lo, hi, n);
    std::vector<double> v(grid.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = fn(grid.node(i));
    // One-sided limits at interior breakpoints.
    if (k > 0) v.front() = fn(std::nextafter(lo, hi));
    if (k + 2 < cuts.size()) v.back() = fn(std::nextafter(hi, lo));
    total += simd::dot(simpson_weights(grid), v);
  }
  return total;
}

namespace {

// m_k = integral_0^2 u^k exp(-rho u) du for k = 0, 1, 2.
std::array<double, 3> exp_moments(double rho) {
  std::array<double, 3> m{};
  if (rho < 1.0) {
    for (int k = 0; k < 3; ++k) {
      double term = 1.0;  // (-rho)^j / j!
      double sum = 0.0;
      for (int j = 0; j < 60; ++j) {
        const double c = term * std::pow(2.0, k + j + 1) / (k + j + 1);
        sum += c;
        if (std::abs(c) < 1e-18 * std::abs(sum)) break;
        term *= -rho / (j + 1);
      }
      m[static_cast<std::size_t>(k)] = sum;
    }
    return m;
  }
  const double e = std::exp(-2.0 * rho);
  m[0] = (1.0 - e) / rho;
  m[1] = (1.0 - e * (1.0 + 2.0 * rho)) / (rho * rho);
  m[2] = (2.0 - e * (2.0 + 4.0 * rho + 4.0 * rho * rho)) / (rho * rho * rho);
  return m;
}

}  // namespace

double exp_weighted_simpson(std::span<const double> samples, double t, double rate) {
  if (samples.size() < 3 || samples.size() % 2 == 0)
    throw QuadratureConfigError("exp_weighted_simpson: need an even cell count >= 2");
  if (!(rate >= 0.0)) throw DomainError("exp_weighted_simpson: rate must be >= 0");
  const std::size_t n_cells = samples.size() - 1;
  const double dt = t / static_cast<double>(n_cells);
  const double rho = rate * dt;

  // Panel [s0, s2] with u = (s2 - s)/dt; quadratic through u = 0 (s2), 1 (s1), 2 (s0).
  const auto m = exp_moments(rho);
  const double w_s2 = 0.5 * (m[2] - 3.0 * m[1] + 2.0 * m[0]);
  const double w_s1 = -(m[2] - 2.0 * m[1]);
  const double w_s0 = 0.5 * (m[2] - m[1]);
  const double q = std::exp(-2.0 * rho);

  double acc = 0.0;
  for (std::size_t p = 0; p + 2 <= n_cells; p += 2) {
    const double panel = w_s0 * samples[p] + w_s1 * samples[p + 1] + w_s2 * samples[p + 2];
    acc = acc * q + panel;
  }
  return acc * dt;
}

}  // namespace heatsrc::quad
