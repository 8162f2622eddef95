#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace heatsrc {

/// Uniform grid lo = x_0 < x_1 < ... < x_n = hi with n = n_cells.
class Grid1D {
 public:
  /// Throws DomainError unless lo < hi and n_cells >= 2.
  Grid1D(double lo, double hi, std::size_t n_cells);

  /// The unit interval [0, 1].
  static Grid1D unit(std::size_t n_cells) { return Grid1D(0.0, 1.0, n_cells); }

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  std::size_t n_cells() const noexcept { return n_cells_; }
  std::size_t size() const noexcept { return n_cells_ + 1; }
  double spacing() const noexcept { return (hi_ - lo_) / static_cast<double>(n_cells_); }

  /// Node i; the last node is exactly hi.
  double node(std::size_t i) const noexcept;
  std::vector<double> nodes() const;

  /// True when the grid spans [0, 1] exactly.
  bool is_unit() const noexcept { return lo_ == 0.0 && hi_ == 1.0; }

  friend bool operator==(const Grid1D&, const Grid1D&) = default;

 private:
  double lo_;
  double hi_;
  std::size_t n_cells_;
};

/// Samples of a real function on a Grid1D. Values are always finite.
class GridFunction {
 public:
  /// Throws DomainError on a length mismatch or a non-finite value.
  GridFunction(Grid1D grid, std::vector<double> values);

  /// Samples fn at every node.
  static GridFunction sample(const Grid1D& grid, const std::function<double(double)>& fn);
  static GridFunction zeros(const Grid1D& grid);

  const Grid1D& grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  std::size_t size() const noexcept { return values_.size(); }

  /// Pointwise difference; grids must match.
  GridFunction operator-(const GridFunction& other) const;

 private:
  Grid1D grid_;
  std::vector<double> values_;
};

}  // namespace heatsrc
