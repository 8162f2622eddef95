#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "heatsrc/cosine.hpp"
#include "heatsrc/forward.hpp"
#include "heatsrc/line_spectral.hpp"
#include "heatsrc/time_profile.hpp"

namespace heatsrc {

// Relaxed iteration for the scaled unknown w = v(., T) * g, where
// g = mu0^ + f^ int_0^T h(s) exp(k xi^2 s) ds and v(xi, t) = exp(-k xi^2 t):
//
//   w_n = w_{n-1} + lambda (target - w_{n-1}),   lambda = v(xi, T)^{1/N},
//   target = chi muT^delta + (1 - chi) v mu0^,   w_0 = v mu0^,
//
// where chi is the indicator of the band |xi| <= theta1. In these variables
// no quantity exceeds the data magnitude. The source is recovered as
// f^ = chi (w - v mu0^) / phi(k xi^2, T). The interval (Neumann) problem uses
// the same recursion on cosine coefficients with xi^2 replaced by m^2 pi^2.

enum class StopKind { a_priori, discrepancy };

struct StoppingRule {
  StopKind kind = StopKind::a_priori;
  int N = 2;            ///< relaxation exponent, lambda = v^{1/N}
  double M = 1.0;       ///< source bound
  double p = 0.0;       ///< smoothness index (default tau only)
  double sigma = 0.0;
  std::optional<double> tau;  ///< discrepancy factor; derived when absent
  std::size_t n_max = 1'000'000;
  double n_multiplier = 1.0;  ///< constant in n = floor(c (M / delta)^{1/N})

  /// Throws ParameterError on N < 1, M <= 0, sigma < 0, tau <= 0, n_max < 1.
  /// Warns when tau <= 1.
  void validate() const;
};

/// lambda = exp(-k xi^2 T / N).
double lambda_line(double xi, double k, double T, int N);
/// lambda = exp(-m^2 pi^2 k T / N).
double lambda_mode(std::size_t m, double k, double T, int N);

/// theta1 = c * sqrt( L * L^{-(1+sigma) p / 2} / ((1 + sigma) k T) ), L = ln(M / delta).
/// Throws ParameterError unless M > delta > 0 and L >= 1.
double theta1_of(double M, double delta, double k, double T, double p, double sigma,
                 double multiplier = 1.0);

/// n = floor(c (M / delta)^{1/N}).
std::size_t a_priori_stop(double M, double delta, int N, double multiplier = 1.0);

/// C1 = (L / [L * L^{-(1+sigma) p / 2}])^p, L = ln(M / delta).
double discrepancy_c1(double M, double delta, double p, double sigma);

/// tau = C1 M^{sigma/(1+sigma)} + ((C_h + 1) / C_h) delta^{sigma/(1+sigma)}.
double discrepancy_tau(double M, double delta, double p, double sigma, double c_h);

/// tau * delta^{1/(1+sigma)}.
double discrepancy_threshold(double tau, double delta, double sigma);

template <class Coeffs>
struct IterState {
  Coeffs w;
  std::size_t n = 0;
  double residual = 0.0;
};

using LineIterState = IterState<FreqFunction>;
using ModeIterState = IterState<CosineSpectrum>;

namespace detail {
// Flat per-component arrays; a complex bin occupies two slots.
struct RelaxationCore {
  std::vector<double> lambda;
  std::vector<double> target;
  std::vector<double> data;
  std::vector<double> residual_weight;

  void step(std::vector<double>& w) const;
  double residual(const std::vector<double>& w) const;
};
}  // namespace detail

/// Whole-line iteration on a frequency grid.
class LineIteration {
 public:
  /// Throws SingularKernelError if phi(k xi^2, T) vanishes inside the band.
  LineIteration(FreqFunction muT_delta, FreqFunction mu0_hat, TimeProfile h, double k, double T,
                int N, double theta1);

  LineIterState initial_state() const;
  LineIterState step(const LineIterState& s) const;
  double residual(const FreqFunction& w) const;
  /// Band-limited source; exactly zero outside |xi| <= theta1.
  FreqFunction source_of(const FreqFunction& w) const;
  /// u^(., t) for a given source.
  FreqFunction u_at(const FreqFunction& f_hat, double t) const;

  const std::vector<double>& lambdas() const noexcept { return lambda_; }
  bool in_band(std::size_t j) const noexcept { return band_[j] != 0; }

 private:
  FreqFunction muT_;
  FreqFunction mu0_;
  TimeProfile h_;
  double k_;
  double T_;
  std::vector<double> lambda_;
  std::vector<double> v_;
  std::vector<double> phi_;
  std::vector<char> band_;
  detail::RelaxationCore core_;
};

/// Interval (Neumann) iteration on cosine coefficients, modes 0..a.max_mode().
class ModeIteration {
 public:
  /// c_delta: data coefficients (at least modes 0..theta); a: coefficients of mu0.
  ModeIteration(CosineSpectrum c_delta, CosineSpectrum a, TimeProfile h, double k, double T, int N,
                std::size_t theta);

  ModeIterState initial_state() const;
  ModeIterState step(const ModeIterState& s) const;
  double residual(const CosineSpectrum& w) const;
  /// Source coefficients; zero above theta.
  CosineSpectrum source_of(const CosineSpectrum& w) const;
  CosineSpectrum u_at(const CosineSpectrum& b, double t) const;

  const std::vector<double>& lambdas() const noexcept { return lambda_; }
  std::size_t theta() const noexcept { return theta_; }

 private:
  CosineSpectrum c_;
  CosineSpectrum a_;
  TimeProfile h_;
  double k_;
  double T_;
  std::size_t theta_;
  std::vector<double> lambda_;
  std::vector<double> v_;
  std::vector<double> phi_;
  detail::RelaxationCore core_;
};

/// One relaxation step with the residual refreshed.
LineIterState iterate_step(const LineIterState& state, const FreqFunction& muT_delta,
                           const FreqFunction& mu0_hat, double theta1, const TimeProfile& h,
                           double k, double T, int N);
ModeIterState iterate_step(const ModeIterState& state, const CosineSpectrum& c_delta,
                           const CosineSpectrum& a, std::size_t theta, const TimeProfile& h,
                           double k, double T, int N);

template <class Coeffs>
struct IterationResult {
  Coeffs f_hat;
  std::function<Coeffs(double)> u_at;
  std::size_t n_stop = 0;
  std::vector<double> trace;  ///< residual for n = 0..n_stop
  double threshold = 0.0;     ///< tau delta^{1/(1+sigma)}
  double tau = 0.0;
};

/// Runs the whole-line iteration until the stopping rule fires.
/// A-priori: n = floor(c (M/delta)^{1/N}); discrepancy: first n with residual <= threshold.
/// Throws NonConvergenceError (with the trace) if n_max is hit first, ParameterError
/// for delta <= 0 or an a-priori count above n_max.
IterationResult<FreqFunction> run_line(const FreqFunction& muT_delta, const FreqFunction& mu0_hat,
                                       const TimeProfile& h, double k, double T,
                                       const StoppingRule& rule, double theta1, double delta);

/// Neumann variant: analyzes mu_T^delta up to theta and mu0 up to 3 theta, then iterates.
IterationResult<CosineSpectrum> run_modes(const GridFunction& muT_delta, const ProblemSpec& spec,
                                          const StoppingRule& rule, std::size_t theta,
                                          double delta);

}  // namespace heatsrc
