#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "heatsrc/cosine.hpp"
#include "heatsrc/forward.hpp"
#include "heatsrc/grid.hpp"
#include "heatsrc/time_profile.hpp"

namespace heatsrc {

// Frequency cut-off inversion of the Neumann problem. Mode m <= theta of the
// source is recovered from the data coefficient c_m as
//   b_m = (c_m - a_m exp(-m^2 pi^2 k T)) / phi_m(T),
// every mode above theta is dropped.

/// b_m for m <= theta, zero-length beyond. Throws SingularKernelError naming m
/// when |phi_m(T)| <= 1e-13 * int_0^T |h|, DomainError if c has fewer than
/// theta + 1 modes.
CosineSpectrum invert_coefficients(const CosineSpectrum& c_delta, const CosineSpectrum& a,
                                   const TimeProfile& h, double k, double T, std::size_t theta);

/// floor(theta1_of(...)).
std::size_t theta_of(double M, double delta, double k, double T, double p, double sigma,
                     double multiplier = 1.0);

/// sigma_m = phi_m(T) / int_0^T h, m = 0..m_max. Throws ParameterError when
/// int_0^T h vanishes.
std::vector<double> singular_values(const TimeProfile& h, double k, double T, std::size_t m_max);

/// Precomputed kernels for repeated inversions at a fixed theta.
class CutoffInverter {
 public:
  /// mu0 is analyzed up to 3 theta with the default resolution guard.
  CutoffInverter(const ProblemSpec& spec, std::size_t theta);

  std::size_t theta() const noexcept { return theta_; }
  const CosineSpectrum& initial_spectrum() const noexcept { return a_; }
  const std::vector<double>& kernels() const noexcept { return phi_T_; }

  CosineSpectrum invert(const CosineSpectrum& c_delta) const;
  /// Coefficients of u^delta(., t): modes of mu0 up to 3 theta, source modes up to theta.
  CosineSpectrum u_spectrum(const CosineSpectrum& b_delta, double t) const;

 private:
  double k_;
  double T_;
  TimeProfile h_;
  std::size_t theta_;
  CosineSpectrum a_;
  std::vector<double> decay_T_;
  std::vector<double> phi_T_;
};

struct CutoffResult {
  CosineSpectrum b_delta;
  GridFunction f_delta;
  std::size_t theta;
  std::vector<double> singular_values;
  std::function<CosineSpectrum(double)> u_spectrum;

  GridFunction u_delta(double t, const Grid1D& grid) const {
    return synthesize(u_spectrum(t), grid);
  }
};

/// Analyzes mu_T^delta up to theta (guard relaxed to one cell per mode; the
/// top mode must stay below the cell count), inverts, and synthesizes f^delta
/// on `grid`.
CutoffResult reconstruct(const ProblemSpec& spec, const GridFunction& muT_delta, std::size_t theta,
                         const Grid1D& grid);

/// Data coefficients as reconstruct reads them.
CosineSpectrum analyze_data(const GridFunction& muT_delta, std::size_t theta);

struct BiasVariance {
  double projected;  ///< ||P_theta (f^delta - f)||
  double tail;       ///< ||(I - P_theta) f||
};

/// Both parts of the error split, by Parseval. f_true must carry more modes than theta.
BiasVariance bias_variance(const CosineSpectrum& b_delta, const CosineSpectrum& f_true);

/// || sum_{m > cut} exp(-m^2 pi^2 k t) a_m cos(m pi x) || by Parseval.
double initial_truncation_residual(const CosineSpectrum& a_full, std::size_t cut, double k,
                                   double t);

/// abs_mass(h, t) * err_f + initial truncation residual.
double u_error_bound(const TimeProfile& h, double t, double err_f, double initial_residual);

}  // namespace heatsrc
