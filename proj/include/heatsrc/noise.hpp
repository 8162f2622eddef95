#pragma once

#include <cstdint>

#include "heatsrc/grid.hpp"
#include "heatsrc/line_spectral.hpp"

namespace heatsrc {

// Multiplicative uniform noise: node i gets
//   mu^delta_i = mu_i + 2 (r_i - 0.5) noiselv mu_i,
// with r_i the i-th draw of the generator, taken in node order.

enum class Generator {
  /// std::mt19937_64 seeded with `seed`; a 64-bit output x maps to
  /// (x >> 11) * 2^-53 in [0, 1).
  mt19937_64,
};

struct NoiseSpec {
  double noiselv = 0.0;
  std::uint64_t seed = 1;
  Generator generator = Generator::mt19937_64;

  /// Throws ParameterError unless 0 <= noiselv <= 1.
  void validate() const;
};

struct NoisyData {
  GridFunction data;
  double delta;  ///< l2_norm(data - exact)
};

/// Perturbs every node. delta is the Simpson L2 distance on the data grid,
/// which therefore needs an even cell count.
NoisyData perturb(const GridFunction& muT, const NoiseSpec& spec);

struct NoisyFreqData {
  FreqFunction data;
  double delta;  ///< freq_l2_distance(data, exact)
};

/// Line-case variant: bins j and n - j share the factor 1 + 2 (r_j - 0.5) noiselv,
/// j = 0..n/2, so conjugate symmetry survives.
NoisyFreqData perturb(const FreqFunction& muT_hat, const NoiseSpec& spec);

}  // namespace heatsrc
