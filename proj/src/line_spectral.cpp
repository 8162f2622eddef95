#include "heatsrc/line_spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "heatsrc/error.hpp"

namespace heatsrc {

FreqGrid::FreqGrid(double xi_max, std::size_t n_bins) : xi_max_(xi_max), n_bins_(n_bins) {
  if (!(xi_max > 0.0) || !std::isfinite(xi_max)) throw DomainError("FreqGrid: xi_max must be positive");
  if (n_bins == 0 || n_bins % 2 != 0) throw DomainError("FreqGrid: n_bins must be even and positive");
}

double FreqGrid::xi(std::size_t j) const noexcept {
  const auto n = static_cast<double>(n_bins_);
  return xi_max_ * ((2.0 * static_cast<double>(j) - n) / n);
}

std::size_t FreqGrid::index_of(double xi) const {
  const double pos = (xi + xi_max_) / spacing();
  const double r = std::clamp(std::round(pos), 0.0, static_cast<double>(n_bins_));
  return static_cast<std::size_t>(r);
}

FreqFunction::FreqFunction(FreqGrid grid, std::vector<Complex> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size())
    throw DomainError("FreqFunction: expected " + std::to_string(grid_.size()) + " values");
  for (const auto& v : values_)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw DomainError("FreqFunction: non-finite value");
}

bool FreqFunction::conjugate_symmetric(double tol) const {
  const std::size_t n = values_.size() - 1;
  for (std::size_t j = 0; j <= n; ++j)
    if (std::abs(values_[j] - std::conj(values_[n - j])) > tol) return false;
  return true;
}

double freq_l2_norm(const FreqFunction& f) {
  const auto v = f.values();
  double sum = 0.0;
  for (std::size_t j = 0; j < v.size(); ++j) {
    const double w = (j == 0 || j + 1 == v.size()) ? 0.5 : 1.0;
    sum += w * std::norm(v[j]);
  }
  return std::sqrt(sum * f.grid().spacing());
}

double freq_l2_distance(const FreqFunction& a, const FreqFunction& b) {
  if (!(a.grid() == b.grid())) throw GridMismatchError("freq_l2_distance: grid mismatch");
  std::vector<Complex> d(a.size());
  for (std::size_t j = 0; j < d.size(); ++j) d[j] = a[j] - b[j];
  return freq_l2_norm(FreqFunction(a.grid(), std::move(d)));
}

namespace {

std::vector<double> rates_of(const FreqGrid& g, double k) {
  std::vector<double> r(g.size());
  for (std::size_t j = 0; j < r.size(); ++j) r[j] = k * g.xi(j) * g.xi(j);
  return r;
}

void require_same(const FreqFunction& a, const FreqFunction& b, const char* who) {
  if (!(a.grid() == b.grid())) throw GridMismatchError(std::string(who) + ": frequency grid mismatch");
}

}  // namespace

FreqFunction line_forward(const FreqFunction& mu0_hat, const FreqFunction& f_hat,
                          const TimeProfile& h, double k, double t) {
  require_same(mu0_hat, f_hat, "line_forward");
  if (!(t >= 0.0 && t <= h.horizon())) throw DomainError("line_forward: t outside [0, T]");
  const auto rates = rates_of(mu0_hat.grid(), k);
  std::vector<double> phi(rates.size(), 0.0);
  if (t > 0.0) phi = h.decayed_kernels(rates, t);
  std::vector<Complex> u(rates.size());
  for (std::size_t j = 0; j < u.size(); ++j)
    u[j] = mu0_hat[j] * std::exp(-rates[j] * t) + f_hat[j] * phi[j];
  return FreqFunction(mu0_hat.grid(), std::move(u));
}

FreqFunction line_invert_exact(const FreqFunction& mu0_hat, const FreqFunction& muT_hat,
                               const TimeProfile& h, double k, double T) {
  require_same(mu0_hat, muT_hat, "line_invert_exact");
  const auto rates = rates_of(mu0_hat.grid(), k);
  const auto phi = h.decayed_kernels(rates, T);
  const double floor = 1e-13 * h.abs_mass(T);
  std::vector<Complex> f(rates.size());
  for (std::size_t j = 0; j < f.size(); ++j) {
    if (!(std::abs(phi[j]) > floor))
      throw SingularKernelError("line_invert_exact: kernel vanishes at xi = " +
                                    std::to_string(mu0_hat.grid().xi(j)),
                                mu0_hat.grid().xi(j));
    f[j] = (muT_hat[j] - mu0_hat[j] * std::exp(-rates[j] * T)) / phi[j];
  }
  return FreqFunction(mu0_hat.grid(), std::move(f));
}

FreqFunction line_interpolate(const FreqFunction& mu0_hat, const FreqFunction& muT_hat,
                              const TimeProfile& h, double k, double t, double T) {
  require_same(mu0_hat, muT_hat, "line_interpolate");
  if (!(t >= 0.0 && t <= T)) throw DomainError("line_interpolate: t outside [0, T]");
  const auto rates = rates_of(mu0_hat.grid(), k);
  const auto phi_T = h.decayed_kernels(rates, T);
  std::vector<double> phi_t(rates.size(), 0.0);
  if (t > 0.0) phi_t = h.decayed_kernels(rates, t);
  std::vector<Complex> u(rates.size());
  for (std::size_t j = 0; j < u.size(); ++j) {
    const double ratio = phi_t[j] / phi_T[j];
    const double w0 = std::exp(-rates[j] * t) - std::exp(-rates[j] * T) * ratio;
    u[j] = w0 * mu0_hat[j] + ratio * muT_hat[j];
  }
  return FreqFunction(mu0_hat.grid(), std::move(u));
}

}  // namespace heatsrc
