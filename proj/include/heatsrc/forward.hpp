#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <utility>

#include "heatsrc/cosine.hpp"
#include "heatsrc/grid.hpp"
#include "heatsrc/time_profile.hpp"

namespace heatsrc {

enum class DomainMode { neumann_unit_interval, whole_line };

/// Frequency band used when the problem is posed on the whole line.
struct LineBand {
  double xi_max = 0.0;
  std::size_t n_bins = 1024;
};

/// u_t = k u_xx + f(x) h(t), u(x, 0) = mu0(x), with either homogeneous
/// Neumann conditions on [0, 1] or no boundary (whole line).
struct ProblemSpec {
  double k;
  double T;
  TimeProfile h;
  GridFunction mu0;
  std::optional<GridFunction> f_true;
  DomainMode domain_mode = DomainMode::neumann_unit_interval;
  std::optional<LineBand> line;

  /// Throws ParameterError/DomainError on k <= 0, T <= 0, h.horizon() != T,
  /// or a whole-line spec without band parameters.
  void validate() const;
};

/// Coefficients of u(., t) = sum_m [exp(-m^2 pi^2 k t) a_m + b_m phi_m(t)] cos(m pi x).
/// Requires 0 <= t <= h.horizon().
CosineSpectrum series_spectrum(const CosineSpectrum& a, const CosineSpectrum& b,
                               const TimeProfile& h, double k, double t);

/// Highest mode of mu0 that passes the default resolution guard on its grid.
std::size_t default_mu0_modes(const ProblemSpec& spec);

/// Cosine-series solution of the Neumann problem for a given source spectrum:
///   u(x, t) = sum_m [exp(-m^2 pi^2 k t) a_m + b_m phi_m(t)] cos(m pi x),
/// with a = analyze(mu0, mu0_modes) and phi_m(t) = h.decayed_kernel(m^2 pi^2 k, t).
class SeriesSolver {
 public:
  /// mu0_modes defaults to default_mu0_modes(spec).
  SeriesSolver(const ProblemSpec& spec, CosineSpectrum f,
               std::optional<std::size_t> mu0_modes = std::nullopt);

  /// Cosine coefficients of u(., t). Throws DomainError for t outside [0, T].
  CosineSpectrum spectrum_at(double t) const;

  GridFunction at(double t, const Grid1D& grid) const;

  const CosineSpectrum& initial_spectrum() const noexcept { return a_; }
  const CosineSpectrum& source_spectrum() const noexcept { return b_; }

 private:
  double k_;
  TimeProfile h_;
  CosineSpectrum a_;
  CosineSpectrum b_;
};

GridFunction solve_series(const ProblemSpec& spec, const CosineSpectrum& f, double t,
                          const Grid1D& grid, std::optional<std::size_t> mu0_modes = std::nullopt);

/// mu_T = u(., T).
GridFunction final_data(const ProblemSpec& spec, const CosineSpectrum& f, const Grid1D& grid,
                        std::optional<std::size_t> mu0_modes = std::nullopt);

/// Heat-kernel smoothing of a single cosine mode, both ways:
///   lhs = int_{x-W}^{x+W} cos(m pi y) G_{kt}(x - y) dy   (Simpson)
///   rhs = cos(m pi x) exp(-m^2 pi^2 k t)
/// Throws TailBoundError if the Gaussian mass beyond W exceeds 1e-12,
/// DomainError if t <= 0 or k <= 0.
std::pair<double, double> kernel_identity_check(std::size_t m, double k, double t, double x,
                                                double half_width);

/// Half-width that keeps the Gaussian tail of G_{kt} below 1e-13.
double kernel_half_width(double k, double t);

struct ExtensionOptions {
  std::size_t z_cells = 800;  ///< Simpson cells in the Gaussian variable
  std::size_t s_cells = 2000; ///< Simpson cells in time
  double z_max = 6.5;
};

/// Even 2-periodic extension of [0, 1]: maps y to the point of [0, 1] it mirrors.
double even_periodic_fold(double y);

/// Fundamental-solution form of the Neumann solution: mu0 and f are extended
/// evenly and periodically to the whole line and convolved with the heat
/// kernel in space and time by quadrature. Validation oracle only.
double extension_solution(double k, const TimeProfile& h,
                          const std::function<double(double)>& mu0,
                          const std::function<double(double)>& f, double x, double t,
                          ExtensionOptions opts = {});

}  // namespace heatsrc
