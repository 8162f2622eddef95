#include "heatsrc/noise.hpp"

#include <random>
#include <vector>

#include "heatsrc/cosine.hpp"
#include "heatsrc/error.hpp"

namespace heatsrc {

void NoiseSpec::validate() const {
  if (!(noiselv >= 0.0 && noiselv <= 1.0))
    throw ParameterError("noise level must lie in [0, 1]");
}

namespace {

class UniformStream {
 public:
  explicit UniformStream(const NoiseSpec& spec) : engine_(spec.seed) {}
  double next() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace

NoisyData perturb(const GridFunction& muT, const NoiseSpec& spec) {
  spec.validate();
  UniformStream rng(spec);
  std::vector<double> out(muT.size());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = muT[i] + 2.0 * (rng.next() - 0.5) * spec.noiselv * muT[i];
  GridFunction noisy(muT.grid(), std::move(out));
  const double delta = l2_norm(noisy - muT);
  return {std::move(noisy), delta};
}

NoisyFreqData perturb(const FreqFunction& muT_hat, const NoiseSpec& spec) {
  spec.validate();
  UniformStream rng(spec);
  const std::size_t n = muT_hat.size() - 1;
  std::vector<Complex> out(muT_hat.size());
  for (std::size_t j = 0; j <= n / 2; ++j) {
    const double scale = 1.0 + 2.0 * (rng.next() - 0.5) * spec.noiselv;
    out[j] = muT_hat[j] * scale;
    out[n - j] = muT_hat[n - j] * scale;
  }
  FreqFunction noisy(muT_hat.grid(), std::move(out));
  const double delta = freq_l2_distance(noisy, muT_hat);
  return {std::move(noisy), delta};
}

}  // namespace heatsrc
