#include "heatsrc/grid.hpp"

#include <cmath>
#include <string>

#include "heatsrc/error.hpp"

namespace heatsrc {

Grid1D::Grid1D(double lo, double hi, std::size_t n_cells) : lo_(lo), hi_(hi), n_cells_(n_cells) {
  if (!(std::isfinite(lo) && std::isfinite(hi)) || !(lo < hi))
    throw DomainError("Grid1D: need finite lo < hi");
  if (n_cells < 2) throw DomainError("Grid1D: need at least 2 cells");
}

double Grid1D::node(std::size_t i) const noexcept {
  if (i >= n_cells_) return hi_;
  return lo_ + (hi_ - lo_) * (static_cast<double>(i) / static_cast<double>(n_cells_));
}

std::vector<double> Grid1D::nodes() const {
  std::vector<double> out(size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = node(i);
  return out;
}

GridFunction::GridFunction(Grid1D grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size())
    throw DomainError("GridFunction: expected " + std::to_string(grid_.size()) + " values, got " +
                      std::to_string(values_.size()));
  for (std::size_t i = 0; i < values_.size(); ++i)
    if (!std::isfinite(values_[i]))
      throw DomainError("GridFunction: non-finite value at node " + std::to_string(i));
}

GridFunction GridFunction::sample(const Grid1D& grid, const std::function<double(double)>& fn) {
  std::vector<double> v(grid.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = fn(grid.node(i));
  return GridFunction(grid, std::move(v));
}

GridFunction GridFunction::zeros(const Grid1D& grid) {
  return GridFunction(grid, std::vector<double>(grid.size(), 0.0));
}

GridFunction GridFunction::operator-(const GridFunction& other) const {
  if (!(grid_ == other.grid_)) throw DomainError("GridFunction: grid mismatch in subtraction");
  std::vector<double> v(values_.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = values_[i] - other.values_[i];
  return GridFunction(grid_, std::move(v));
}

}  // namespace heatsrc
