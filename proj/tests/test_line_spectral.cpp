#include <doctest.h>

#include <cmath>
#include <numbers>

#include "heatsrc/error.hpp"
#include "heatsrc/experiments.hpp"
#include "heatsrc/line_spectral.hpp"
#include "support.hpp"

using namespace heatsrc;
using std::numbers::pi;

TEST_SUITE("line_spectral") {

TEST_CASE("frequency grid is symmetric with zero on a node") {
  const FreqGrid g(10.0, 8);
  CHECK(g.size() == 9);
  CHECK(g.xi(0) == -10.0);
  CHECK(g.xi(4) == 0.0);
  CHECK(g.xi(8) == 10.0);
  CHECK(g.index_of(2.4) == 5);
  CHECK_THROWS_AS(FreqGrid(1.0, 7), DomainError);
}

TEST_CASE("forward then exact inversion recovers the source at moderate frequency") {
  const LineExample ex = line_example({5.0, 200});
  const auto f = line_invert_exact(ex.mu0_hat, ex.muT_hat, ex.h, ex.k, ex.T);
  for (std::size_t j = 0; j < f.size(); ++j)
    CHECK(std::abs(f[j] - ex.f_hat[j]) < 1e-9 * std::abs(ex.f_hat[0]));
}

TEST_CASE("real sources keep conjugate symmetry") {
  const LineExample ex = line_example({20.0, 512});
  CHECK(ex.muT_hat.conjugate_symmetric(0.0));
}

TEST_CASE("interpolation reproduces both end states") {
  const LineExample ex = line_example({8.0, 64});
  const auto at_T = line_interpolate(ex.mu0_hat, ex.muT_hat, ex.h, ex.k, ex.T, ex.T);
  const auto at_0 = line_interpolate(ex.mu0_hat, ex.muT_hat, ex.h, ex.k, 0.0, ex.T);
  CHECK(freq_l2_distance(at_T, ex.muT_hat) < 1e-14);
  CHECK(freq_l2_distance(at_0, ex.mu0_hat) < 1e-14);
  const auto mid = line_interpolate(ex.mu0_hat, ex.muT_hat, ex.h, ex.k, 0.4, ex.T);
  const auto direct = line_forward(ex.mu0_hat, ex.f_hat, ex.h, ex.k, 0.4);
  CHECK(freq_l2_distance(mid, direct) < 1e-10);
}

TEST_CASE("vanishing kernel is reported with its frequency") {
  const TimeProfile h([](double t) { return std::cos(2.0 * pi * t); }, 1.0);
  const FreqGrid g(2.0, 4);
  const auto one = FreqFunction::sample(g, [](double) { return Complex(1.0, 0.0); });
  try {
    line_invert_exact(one, one, h, 1.0, 1.0);
    FAIL("expected SingularKernelError");
  } catch (const SingularKernelError& e) {
    CHECK(e.where() == 0.0);
  }
}

TEST_CASE("grid mismatch") {
  const auto a = FreqFunction::sample(FreqGrid(1.0, 4), [](double) { return Complex(1.0); });
  const auto b = FreqFunction::sample(FreqGrid(2.0, 4), [](double) { return Complex(1.0); });
  CHECK_THROWS_AS(freq_l2_distance(a, b), GridMismatchError);
}

TEST_CASE("trapezoid norm of a gaussian transform") {
  const LineExample ex = line_example({20.0, 1024});
  // int pi exp(-xi^2 / 2) dxi = pi sqrt(2 pi)
  CHECK(testing::rel_err(freq_l2_norm(ex.f_hat), std::sqrt(pi * std::sqrt(2.0 * pi))) < 1e-12);
}

}
