#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "heatsrc/cosine.hpp"
#include "heatsrc/error.hpp"
#include "support.hpp"

using namespace heatsrc;
using std::numbers::pi;

namespace {

// Coefficients of the hat x / (1 - x) with its peak at 1/2, and of the same
// hat clipped to [0.2, 0.8]; 30-digit quadrature, rounded.
constexpr double kHat[] = {0.25, 0.0, -0.20264236728467554289, 0.0, 0.0, 0.0,
                           -0.022515818587186171432, 0.0, 0.0, 0.0,
                           -0.0081056946913870217155, 0.0, 0.0};
constexpr double kClippedHat[] = {0.21, 0.0, -0.25372342786051019008, 0.0,
                                  0.0084033644232479187042, 0.0, 0.02279631154708574348, 0.0,
                                  0.034648770146043187372, 0.0, -0.0081056946913870083928, 0.0,
                                  -0.018237290096898891291};

double hat(double x) { return x <= 0.5 ? x : 1.0 - x; }
double clipped_hat(double x) { return (x < 0.2 || x > 0.8) ? 0.0 : hat(x); }

CosineSpectrum random_spectrum(std::size_t modes, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> c(modes + 1);
  for (auto& v : c) v = u(rng);
  return CosineSpectrum(c);
}

}  // namespace

TEST_SUITE("cosine") {

TEST_CASE("analyze matches reference coefficients of the hat") {
  const auto g = GridFunction::sample(Grid1D::unit(2000), hat);
  const auto s = analyze(g, 12);
  for (std::size_t m = 0; m <= 12; ++m) CHECK(std::abs(s[m] - kHat[m]) < 1e-10);
}

TEST_CASE("analyze_function resolves jumps at breakpoints") {
  const double breaks[] = {0.2, 0.5, 0.8};
  const auto s = analyze_function(clipped_hat, 12, breaks);
  for (std::size_t m = 0; m <= 12; ++m) CHECK(std::abs(s[m] - kClippedHat[m]) < 1e-11);  // adaptive rule targets ~1e-11
}

TEST_CASE("analyze/synthesize round trip") {
  const auto s = random_spectrum(20, 7);
  const Grid1D g = Grid1D::unit(200);
  const auto back = analyze(synthesize(s, g), 20);
  for (std::size_t m = 0; m <= 20; ++m) CHECK(std::abs(back[m] - s[m]) < 1e-12);
}

TEST_CASE("Parseval: spectral norm equals Simpson norm of the synthesis") {
  for (unsigned seed : {1u, 2u, 3u}) {
    const auto s = random_spectrum(30, seed);
    const double grid_norm = l2_norm(synthesize(s, Grid1D::unit(400)));
    CHECK(testing::rel_err(spectral_l2_norm(s), grid_norm) < 1e-12);
  }
  CHECK(spectral_l2_norm(CosineSpectrum({1.0, 1.0, 2.0})) == doctest::Approx(std::sqrt(3.5)));
}

TEST_CASE("resolution guard") {
  const auto g = GridFunction::sample(Grid1D::unit(50), hat);
  CHECK_NOTHROW(analyze(g, 12));
  CHECK_THROWS_AS(analyze(g, 13), ResolutionError);
  CHECK_NOTHROW(analyze(g, 36, {.min_cells_per_mode = 1.0}));
  CHECK_THROWS_AS(analyze(g, 50, {.min_cells_per_mode = 1.0}), ResolutionError);
  CHECK_THROWS_AS(analyze(GridFunction::sample(Grid1D::unit(51), hat), 2), QuadratureConfigError);
  CHECK_THROWS_AS(analyze(GridFunction::sample(Grid1D(0.0, 2.0, 50), hat), 2), DomainError);
}

TEST_CASE("cosine rows use exact argument reduction") {
  const auto row = cosine_row(Grid1D::unit(10), 5);
  CHECK(row[0] == 1.0);
  CHECK(row[2] == -1.0);
  CHECK(row[10] == -1.0);
  CHECK(std::abs(row[1]) < 1e-15);
}

TEST_CASE("hp norm") {
  const CosineSpectrum s({1.0, 0.0, 0.0, 1.0, 0.0, 2.0});
  CHECK(hp_norm(s, 0.0) == doctest::Approx(std::sqrt(6.0)));
  CHECK(hp_norm(s, 1.0) == doctest::Approx(std::sqrt(1.0 + 10.0 + 4.0 * 26.0)));
  CHECK_THROWS_AS(hp_norm(s, -0.5), Error);
}

TEST_CASE("spectrum helpers") {
  CHECK_THROWS_AS(CosineSpectrum({}), DomainError);
  CHECK_THROWS_AS(CosineSpectrum({1.0, INFINITY}), DomainError);
  const CosineSpectrum s({1.0, 2.0});
  CHECK(s.at_or_zero(5) == 0.0);
  CHECK(s.truncated(3).size() == 4);
  CHECK(s.truncated(0).size() == 1);
}

}
