#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "heatsrc/grid.hpp"

namespace heatsrc {

/// The known temporal factor h(t) on [0, T].
///
/// Holds both an evaluator and dense samples on [0, T]. Kernel integrals over
/// [0, t] are taken on a uniform grid over [0, t] with about
/// dense_cells * t / T cells (even, at least 2).
class TimeProfile {
 public:
  static constexpr std::size_t kDefaultDenseCells = 1000;

  /// Analytic h. Throws DomainError if T <= 0, dense_cells is odd or < 200,
  /// or int_0^T |h| is zero. Warns (does not throw) when h changes sign.
  TimeProfile(std::function<double(double)> h, double horizon,
              std::size_t dense_cells = kDefaultDenseCells);

  /// Raw samples on a grid [0, T]; evaluation between nodes is linear.
  static TimeProfile from_samples(const GridFunction& samples);

  double horizon() const noexcept { return horizon_; }
  const GridFunction& samples() const noexcept { return samples_; }
  std::size_t dense_cells() const noexcept { return samples_.grid().n_cells(); }

  /// True iff no two dense samples have strictly opposite signs.
  bool single_signed() const noexcept { return single_signed_; }

  /// C_h = int_0^T |h|.
  double c_h() const noexcept { return c_h_; }

  double value(double t) const { return eval_(t); }

  /// phi(rate, t) = int_0^t h(s) exp(-rate (t - s)) ds.
  /// Throws DomainError unless 0 < t <= T and rate >= 0.
  double decayed_kernel(double rate, double t) const;

  /// decayed_kernel for several rates at one t (samples h once).
  std::vector<double> decayed_kernels(std::span<const double> rates, double t) const;

  /// int_0^t |h(s)| ds, split at the sign changes of h.
  double abs_mass(double t) const;

 private:
  TimeProfile(std::function<double(double)> h, GridFunction samples);

  std::vector<double> samples_on(double t) const;
  void check_t(double t, const char* who) const;

  std::function<double(double)> eval_;
  double horizon_;
  GridFunction samples_;
  bool single_signed_ = true;
  double c_h_ = 0.0;
};

}  // namespace heatsrc
