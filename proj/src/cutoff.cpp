#include "heatsrc/cutoff.hpp"

#include <cmath>
#include <memory>
#include <numbers>
#include <string>

#include "heatsrc/error.hpp"
#include "heatsrc/iterative.hpp"
#include "heatsrc/quadrature.hpp"

namespace heatsrc {

using std::numbers::pi;

namespace {

std::vector<double> mode_rates(std::size_t m_max, double k) {
  std::vector<double> r(m_max + 1);
  for (std::size_t m = 0; m <= m_max; ++m) r[m] = static_cast<double>(m * m) * pi * pi * k;
  return r;
}

void check_kernels(const std::vector<double>& phi, const TimeProfile& h, double T) {
  const double floor = 1e-13 * h.abs_mass(T);
  for (std::size_t m = 0; m < phi.size(); ++m)
    if (!(std::abs(phi[m]) > floor))
      throw SingularKernelError("cut-off inversion: kernel vanishes at mode " + std::to_string(m),
                                static_cast<double>(m));
}

}  // namespace

CosineSpectrum invert_coefficients(const CosineSpectrum& c_delta, const CosineSpectrum& a,
                                   const TimeProfile& h, double k, double T, std::size_t theta) {
  if (c_delta.max_mode() < theta)
    throw DomainError("invert_coefficients: data carries modes 0.." +
                      std::to_string(c_delta.max_mode()) + ", need 0.." + std::to_string(theta));
  const auto rates = mode_rates(theta, k);
  const auto phi = h.decayed_kernels(rates, T);
  check_kernels(phi, h, T);
  std::vector<double> b(theta + 1);
  for (std::size_t m = 0; m <= theta; ++m)
    b[m] = (c_delta[m] - a.at_or_zero(m) * std::exp(-rates[m] * T)) / phi[m];
  return CosineSpectrum(std::move(b));
}

std::size_t theta_of(double M, double delta, double k, double T, double p, double sigma,
                     double multiplier) {
  return static_cast<std::size_t>(std::floor(theta1_of(M, delta, k, T, p, sigma, multiplier)));
}

std::vector<double> singular_values(const TimeProfile& h, double k, double T, std::size_t m_max) {
  const double mass = quad::simpson(h.samples());
  if (!(std::abs(mass) > 0.0)) throw ParameterError("singular_values: int_0^T h vanishes");
  auto s = h.decayed_kernels(mode_rates(m_max, k), T);
  for (auto& v : s) v /= mass;
  return s;
}

CutoffInverter::CutoffInverter(const ProblemSpec& spec, std::size_t theta)
    : k_(spec.k), T_(spec.T), h_(spec.h), theta_(theta), a_(analyze(spec.mu0, 3 * theta)) {
  spec.validate();
  if (spec.domain_mode != DomainMode::neumann_unit_interval)
    throw DomainError("CutoffInverter: cut-off inversion is posed on [0, 1]");
  const auto rates = mode_rates(theta, k_);
  phi_T_ = h_.decayed_kernels(rates, T_);
  check_kernels(phi_T_, h_, T_);
  decay_T_.resize(rates.size());
  for (std::size_t m = 0; m < rates.size(); ++m) decay_T_[m] = std::exp(-rates[m] * T_);
}

CosineSpectrum CutoffInverter::invert(const CosineSpectrum& c_delta) const {
  if (c_delta.max_mode() < theta_)
    throw DomainError("CutoffInverter: data must cover modes 0.." + std::to_string(theta_));
  std::vector<double> b(theta_ + 1);
  for (std::size_t m = 0; m <= theta_; ++m) b[m] = (c_delta[m] - a_[m] * decay_T_[m]) / phi_T_[m];
  return CosineSpectrum(std::move(b));
}

CosineSpectrum CutoffInverter::u_spectrum(const CosineSpectrum& b_delta, double t) const {
  return series_spectrum(a_, b_delta, h_, k_, t);
}

CosineSpectrum analyze_data(const GridFunction& muT_delta, std::size_t theta) {
  return analyze(muT_delta, theta, AnalyzeOptions{.min_cells_per_mode = 1.0});
}

CutoffResult reconstruct(const ProblemSpec& spec, const GridFunction& muT_delta, std::size_t theta,
                         const Grid1D& grid) {
  auto inv = std::make_shared<CutoffInverter>(spec, theta);
  CosineSpectrum b = inv->invert(analyze_data(muT_delta, theta));
  GridFunction f = synthesize(b, grid);
  auto sv = singular_values(spec.h, spec.k, spec.T, theta);
  auto u = [inv, b](double t) { return inv->u_spectrum(b, t); };
  return {std::move(b), std::move(f), theta, std::move(sv), std::move(u)};
}

BiasVariance bias_variance(const CosineSpectrum& b_delta, const CosineSpectrum& f_true) {
  const std::size_t theta = b_delta.max_mode();
  if (f_true.max_mode() <= theta)
    throw DomainError("bias_variance: reference spectrum must extend past theta");
  double proj = 0.0;
  for (std::size_t m = 0; m <= theta; ++m) {
    const double d = b_delta[m] - f_true[m];
    proj += (m == 0 ? 1.0 : 0.5) * d * d;
  }
  double tail = 0.0;
  for (std::size_t m = theta + 1; m < f_true.size(); ++m) tail += 0.5 * f_true[m] * f_true[m];
  return {std::sqrt(proj), std::sqrt(tail)};
}

double initial_truncation_residual(const CosineSpectrum& a_full, std::size_t cut, double k,
                                   double t) {
  double sum = 0.0;
  for (std::size_t m = cut + 1; m < a_full.size(); ++m) {
    const double v = std::exp(-static_cast<double>(m * m) * pi * pi * k * t) * a_full[m];
    sum += 0.5 * v * v;
  }
  return std::sqrt(sum);
}

double u_error_bound(const TimeProfile& h, double t, double err_f, double initial_residual) {
  const double mass = t > 0.0 ? h.abs_mass(t) : 0.0;
  return mass * err_f + initial_residual;
}

}  // namespace heatsrc
