#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "heatsrc/grid.hpp"

namespace heatsrc::quad {

/// Composite Simpson weights h/3 * {1, 4, 2, 4, ..., 4, 1}.
/// Throws QuadratureConfigError for an odd cell count.
std::vector<double> simpson_weights(const Grid1D& grid);

/// Composite Simpson integral of the samples over their grid.
double simpson(const GridFunction& g);

/// Composite Simpson integral of fn over [a, b] with n_cells (even) cells.
double simpson(const std::function<double(double)>& fn, double a, double b, std::size_t n_cells);

/// Composite Simpson applied piece by piece between sorted breakpoints inside
/// (a, b). Each piece is sampled with one-sided limits at its ends, so jumps
/// and kinks at breakpoints do not spoil the O(h^4) rate. Cells per piece are
/// proportional to its length, at least 2 and even.
double piecewise_simpson(const std::function<double(double)>& fn, double a, double b,
                         std::span<const double> breakpoints, std::size_t cells_per_unit);

/// Product-integration Simpson rule for integral_0^t h(s) exp(-rate (t - s)) ds,
/// where `samples` are h at the nodes of a uniform grid over [0, t] with an
/// even cell count. On each Simpson panel h is replaced by its quadratic
/// interpolant and integrated exactly against the exponential weight. Every
/// exponential evaluated has a non-positive argument. With rate = 0 the rule
/// is plain composite Simpson.
double exp_weighted_simpson(std::span<const double> samples, double t, double rate);

/// Smallest even integer >= n (and >= 2).
std::size_t even_at_least(double n);

}  // namespace heatsrc::quad
