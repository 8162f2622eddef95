#include "heatsrc/time_profile.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <string>

#include "heatsrc/error.hpp"
#include "heatsrc/log.hpp"
#include "heatsrc/quadrature.hpp"

namespace heatsrc {

namespace log {
namespace {
Sink& sink() {
  static Sink s = [](std::string_view msg) { std::cerr << "warning: " << msg << '\n'; };
  return s;
}
}  // namespace

Sink set_warning_sink(Sink s) {
  Sink old = std::move(sink());
  sink() = std::move(s);
  return old;
}

void warn(std::string_view message) {
  if (sink()) sink()(message);
}
}  // namespace log

namespace {

GridFunction sample_dense(const std::function<double(double)>& h, double horizon,
                          std::size_t cells) {
  if (!(horizon > 0.0) || !std::isfinite(horizon))
    throw DomainError("TimeProfile: horizon must be positive");
  if (cells < 200 || cells % 2 != 0)
    throw DomainError("TimeProfile: dense grid needs an even cell count >= 200");
  return GridFunction::sample(Grid1D(0.0, horizon, cells), h);
}

}  // namespace

TimeProfile::TimeProfile(std::function<double(double)> h, double horizon, std::size_t dense_cells)
    : TimeProfile(h, sample_dense(h, horizon, dense_cells)) {}

TimeProfile::TimeProfile(std::function<double(double)> h, GridFunction samples)
    : eval_(std::move(h)), horizon_(samples.grid().hi()), samples_(std::move(samples)) {
  if (samples_.grid().lo() != 0.0) throw DomainError("TimeProfile: samples must start at t = 0");
  if (samples_.grid().n_cells() % 2 != 0)
    throw DomainError("TimeProfile: dense grid needs an even cell count");
  const auto v = samples_.values();
  bool has_pos = false;
  bool has_neg = false;
  for (double x : v) {
    has_pos = has_pos || x > 0.0;
    has_neg = has_neg || x < 0.0;
  }
  single_signed_ = !(has_pos && has_neg);
  c_h_ = abs_mass(horizon_);
  if (!(c_h_ > 0.0)) throw DomainError("TimeProfile: int_0^T |h| must be positive");
  if (!single_signed_)
    log::warn("h(t) changes sign on [0, T]; convergence guarantees assume a single-signed h");
}

TimeProfile TimeProfile::from_samples(const GridFunction& samples) {
  const Grid1D grid = samples.grid();
  std::vector<double> v(samples.values().begin(), samples.values().end());
  auto interp = [grid, v](double t) {
    const double pos = (t - grid.lo()) / grid.spacing();
    if (pos <= 0.0) return v.front();
    const auto i = static_cast<std::size_t>(pos);
    if (i >= grid.n_cells()) return v.back();
    const double frac = pos - static_cast<double>(i);
    return v[i] + frac * (v[i + 1] - v[i]);
  };
  return TimeProfile(std::move(interp), samples);
}

void TimeProfile::check_t(double t, const char* who) const {
  if (!(t > 0.0 && t <= horizon_))
    throw DomainError(std::string(who) + ": t = " + std::to_string(t) + " outside (0, T]");
}

std::vector<double> TimeProfile::samples_on(double t) const {
  if (t == horizon_) return {samples_.values().begin(), samples_.values().end()};
  const auto n = quad::even_at_least(static_cast<double>(dense_cells()) * t / horizon_);
  const Grid1D grid(0.0, t, n);
  std::vector<double> v(grid.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = eval_(grid.node(i));
  return v;
}

double TimeProfile::decayed_kernel(double rate, double t) const {
  check_t(t, "decayed_kernel");
  if (!(rate >= 0.0)) throw DomainError("decayed_kernel: rate must be >= 0");
  return quad::exp_weighted_simpson(samples_on(t), t, rate);
}

std::vector<double> TimeProfile::decayed_kernels(std::span<const double> rates, double t) const {
  check_t(t, "decayed_kernel");
  const auto v = samples_on(t);
  std::vector<double> out(rates.size());
  for (std::size_t i = 0; i < rates.size(); ++i) {
    if (!(rates[i] >= 0.0)) throw DomainError("decayed_kernel: rate must be >= 0");
    out[i] = quad::exp_weighted_simpson(v, t, rates[i]);
  }
  return out;
}

double TimeProfile::abs_mass(double t) const {
  check_t(t, "abs_mass");
  // Bracket sign changes on the dense grid, then bisect on the evaluator.
  const Grid1D& g = samples_.grid();
  const auto v = samples_.values();
  std::vector<double> roots;
  for (std::size_t i = 0; i + 1 < v.size() && g.node(i) < t; ++i) {
    if (!(v[i] * v[i + 1] < 0.0)) continue;
    double a = g.node(i);
    double b = std::min(g.node(i + 1), t);
    double fa = eval_(a);
    if (fa * eval_(b) > 0.0) continue;
    for (int it = 0; it < 100 && b - a > 1e-15 * std::max(1.0, std::abs(b)); ++it) {
      const double mid = 0.5 * (a + b);
      const double fm = eval_(mid);
      if ((fm < 0.0) == (fa < 0.0)) {
        a = mid;
        fa = fm;
      } else {
        b = mid;
      }
    }
    roots.push_back(0.5 * (a + b));
  }
  const auto per_unit = static_cast<std::size_t>(
      std::ceil(static_cast<double>(dense_cells()) / horizon_));
  return quad::piecewise_simpson([this](double s) { return std::abs(eval_(s)); }, 0.0, t, roots,
                                 per_unit);
}

}  // namespace heatsrc
