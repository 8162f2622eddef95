#include "heatsrc/forward.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "heatsrc/error.hpp"
#include "heatsrc/quadrature.hpp"

namespace heatsrc {

using std::numbers::pi;

void ProblemSpec::validate() const {
  if (!(k > 0.0) || !std::isfinite(k)) throw ParameterError("ProblemSpec: k must be positive");
  if (!(T > 0.0) || !std::isfinite(T)) throw ParameterError("ProblemSpec: T must be positive");
  if (std::abs(h.horizon() - T) > 1e-12 * T)
    throw ParameterError("ProblemSpec: h is defined on [0, " + std::to_string(h.horizon()) +
                         "], expected T = " + std::to_string(T));
  if (domain_mode == DomainMode::neumann_unit_interval && !mu0.grid().is_unit())
    throw DomainError("ProblemSpec: mu0 must be sampled on [0, 1]");
  if (domain_mode == DomainMode::whole_line && (!line || !(line->xi_max > 0.0) || line->n_bins == 0 ||
                                                line->n_bins % 2 != 0))
    throw ParameterError("ProblemSpec: whole-line mode needs xi_max > 0 and an even bin count");
}

std::size_t default_mu0_modes(const ProblemSpec& spec) { return spec.mu0.grid().n_cells() / 4; }

SeriesSolver::SeriesSolver(const ProblemSpec& spec, CosineSpectrum f,
                           std::optional<std::size_t> mu0_modes)
    : k_(spec.k),
      h_(spec.h),
      a_(analyze(spec.mu0, mu0_modes.value_or(default_mu0_modes(spec)))),
      b_(std::move(f)) {
  spec.validate();
  if (spec.domain_mode != DomainMode::neumann_unit_interval)
    throw DomainError("SeriesSolver: the cosine series solves the Neumann problem only");
}

CosineSpectrum series_spectrum(const CosineSpectrum& a, const CosineSpectrum& b,
                               const TimeProfile& h, double k, double t) {
  if (!(t >= 0.0 && t <= h.horizon()))
    throw DomainError("solve_series: t = " + std::to_string(t) + " outside [0, T]");
  const std::size_t modes = std::max(a.size(), b.size());
  std::vector<double> u(modes, 0.0);
  for (std::size_t m = 0; m < a.size(); ++m) {
    const double rate = static_cast<double>(m * m) * pi * pi * k;
    u[m] = std::exp(-rate * t) * a[m];
  }
  if (t > 0.0) {
    std::vector<double> rates(b.size());
    for (std::size_t m = 0; m < b.size(); ++m) rates[m] = static_cast<double>(m * m) * pi * pi * k;
    const auto phi = h.decayed_kernels(rates, t);
    for (std::size_t m = 0; m < b.size(); ++m) u[m] += b[m] * phi[m];
  }
  return CosineSpectrum(std::move(u));
}

CosineSpectrum SeriesSolver::spectrum_at(double t) const {
  return series_spectrum(a_, b_, h_, k_, t);
}

GridFunction SeriesSolver::at(double t, const Grid1D& grid) const {
  return synthesize(spectrum_at(t), grid);
}

GridFunction solve_series(const ProblemSpec& spec, const CosineSpectrum& f, double t,
                          const Grid1D& grid, std::optional<std::size_t> mu0_modes) {
  return SeriesSolver(spec, f, mu0_modes).at(t, grid);
}

GridFunction final_data(const ProblemSpec& spec, const CosineSpectrum& f, const Grid1D& grid,
                        std::optional<std::size_t> mu0_modes) {
  return solve_series(spec, f, spec.T, grid, mu0_modes);
}

double kernel_half_width(double k, double t) { return 8.0 * std::sqrt(4.0 * k * t); }

std::pair<double, double> kernel_identity_check(std::size_t m, double k, double t, double x,
                                                double half_width) {
  if (!(t > 0.0) || !(k > 0.0)) throw DomainError("kernel_identity_check: need k, t > 0");
  const double scale = std::sqrt(4.0 * k * t);
  if (!(half_width > 0.0) || std::erfc(half_width / scale) > 1e-12)
    throw TailBoundError("kernel_identity_check: half width " + std::to_string(half_width) +
                         " leaves more than 1e-12 of Gaussian mass outside");

  const double mpi = static_cast<double>(m) * pi;
  const double dy = std::min(1.0 / (8.0 * static_cast<double>(m + 1)), scale / 16.0);
  const auto n = quad::even_at_least(2.0 * half_width / dy);
  const double norm = 1.0 / std::sqrt(4.0 * k * pi * t);
  auto integrand = [&](double y) {
    const double d = x - y;
    return std::cos(mpi * y) * norm * std::exp(-d * d / (4.0 * k * t));
  };
  const double lhs = quad::simpson(integrand, x - half_width, x + half_width, n);
  const double rhs = std::cos(mpi * x) * std::exp(-mpi * mpi * k * t);
  return {lhs, rhs};
}

double even_periodic_fold(double y) {
  double r = std::fmod(std::abs(y), 2.0);
  return r > 1.0 ? 2.0 - r : r;
}

namespace {

// (1/sqrt(pi)) int exp(-z^2) g_ext(x + sqrt(4 k tau) z) dz; g(x) at tau = 0.
double smoothed(const std::function<double(double)>& g, double k, double tau, double x,
                std::span<const double> zw, std::span<const double> z) {
  if (tau <= 0.0) return g(even_periodic_fold(x));
  const double scale = std::sqrt(4.0 * k * tau);
  double sum = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i)
    sum += zw[i] * std::exp(-z[i] * z[i]) * g(even_periodic_fold(x + scale * z[i]));
  return sum / std::sqrt(pi);
}

}  // namespace

double extension_solution(double k, const TimeProfile& h,
                          const std::function<double(double)>& mu0,
                          const std::function<double(double)>& f, double x, double t,
                          ExtensionOptions opts) {
  if (!(t > 0.0 && t <= h.horizon())) throw DomainError("extension_solution: t outside (0, T]");
  const Grid1D zgrid(-opts.z_max, opts.z_max, opts.z_cells);
  const auto zw = quad::simpson_weights(zgrid);
  const auto z = zgrid.nodes();

  const double initial = smoothed(mu0, k, t, x, zw, z);

  const Grid1D sgrid(0.0, t, opts.s_cells);
  const auto sw = quad::simpson_weights(sgrid);
  double source = 0.0;
  for (std::size_t j = 0; j < sgrid.size(); ++j) {
    const double s = sgrid.node(j);
    source += sw[j] * h.value(s) * smoothed(f, k, t - s, x, zw, z);
  }
  return initial + source;
}

}  // namespace heatsrc
