#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "heatsrc/cutoff.hpp"
#include "heatsrc/error.hpp"
#include "heatsrc/experiments.hpp"
#include "support.hpp"

using namespace heatsrc;
using std::numbers::pi;

TEST_SUITE("cutoff") {

TEST_CASE("noiseless round trip returns the source modes") {
  const Example ex = builtin_example(ExampleId::ex1);
  const auto muT = ex.final_data(Grid1D::unit(200));
  const auto b = invert_coefficients(analyze(muT, 12), analyze(ex.spec.mu0, 36), ex.spec.h, 1.0,
                                     1.0, 12);
  REQUIRE(b.size() == 13);
  const double want[] = {1, 0, 0, 1, 0, 2, 0, 0, 0, 0, 0, 0, 0};
  for (std::size_t m = 0; m <= 12; ++m) CHECK(std::abs(b[m] - want[m]) < 1e-7);
}

TEST_CASE("zero data and zero initial state give zero source") {
  const TimeProfile h([](double t) { return t; }, 1.0);
  const CosineSpectrum zero(std::vector<double>(13, 0.0));
  const auto b = invert_coefficients(zero, zero, h, 1.0, 1.0, 12);
  for (double v : b.coeffs()) CHECK(v == 0.0);
  CHECK_THROWS_AS(invert_coefficients(CosineSpectrum({0.0, 0.0}), zero, h, 1.0, 1.0, 12), DomainError);
}

TEST_CASE("amplification of mode 12 for a ramp in time") {
  // For h(t) = t the kernel is (r - 1 + e^{-r}) / r^2 with r = 144 pi^2.
  const TimeProfile h([](double t) { return t; }, 1.0);
  const double r = 144.0 * pi * pi;
  std::vector<double> c(13, 0.0);
  c[12] = 1.0;
  const CosineSpectrum zero(std::vector<double>(1, 0.0));
  const auto b = invert_coefficients(CosineSpectrum(c), zero, h, 1.0, 1.0, 12);
  CHECK(testing::rel_err(b[12], r * r / (r - 1.0 + std::exp(-r))) < 1e-9);
}

TEST_CASE("theta rule") {
  CHECK(theta_of(std::exp(9.0), 1.0, 1, 1, 0, 0) == 3);
  CHECK(theta_of(1.870888, 0.003035, 1, 1, 1.0 / 3, 0.2) == 1);
  std::size_t prev = 0;
  for (double d = 0.1; d > 1e-15; d /= 2) {
    const std::size_t th = theta_of(1.870888, d, 1, 1, 1.0 / 3, 0.2);
    CHECK(th >= prev);
    prev = th;
  }
}

TEST_CASE("reconstruction is affine in the data") {
  const Example ex = builtin_example(ExampleId::ex1);
  const Grid1D g = Grid1D::unit(50);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<double> x(g.size()), y(g.size()), s(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    x[i] = u(rng);
    y[i] = u(rng);
    s[i] = x[i] + y[i];
  }
  const auto bx = reconstruct(ex.spec, GridFunction(g, x), 12, g).b_delta;
  const auto by = reconstruct(ex.spec, GridFunction(g, y), 12, g).b_delta;
  const auto bs = reconstruct(ex.spec, GridFunction(g, s), 12, g).b_delta;
  const auto b0 = reconstruct(ex.spec, GridFunction::zeros(g), 12, g).b_delta;
  double scale = 0.0;
  for (std::size_t m = 0; m <= 12; ++m) scale = std::max(scale, std::abs(bs[m]));
  for (std::size_t m = 0; m <= 12; ++m) CHECK(std::abs(bx[m] + by[m] - bs[m] - b0[m]) <= 1e-10 * scale);
}

TEST_CASE("cut-off equals spectral projection for exact data") {
  const Example ex = builtin_example(ExampleId::ex2);
  const Grid1D fine = Grid1D::unit(2000);
  const auto res = reconstruct(ex.spec, ex.final_data(fine), 12, fine);
  for (std::size_t m = 0; m <= 12; ++m) CHECK(std::abs(res.b_delta[m] - ex.f_spectrum[m]) < 1e-6);
}

TEST_CASE("singular values lie in (0, 1] and decrease to zero") {
  const Example ex = builtin_example(ExampleId::ex1);
  const auto s = singular_values(ex.spec.h, 1.0, 1.0, 40);
  CHECK(s[0] == doctest::Approx(1.0).epsilon(1e-12));
  for (std::size_t m = 1; m < s.size(); ++m) {
    CHECK(s[m] > 0.0);
    CHECK(s[m] < s[m - 1]);
  }
  CHECK(s.back() < 1e-3);
}

TEST_CASE("error split and u bound hold on noisy runs") {
  const CutoffExperiment exp(builtin_example(ExampleId::ex1), 50, 20);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto run = exp.run(0.05, seed, 6);
    const auto bv = bias_variance(run.result.b_delta, exp.example().f_spectrum);
    const auto diff = exp.example().f_spectrum.truncated(400);
    std::vector<double> d(diff.coeffs().begin(), diff.coeffs().end());
    for (std::size_t m = 0; m <= 6; ++m) d[m] -= run.result.b_delta[m];
    const double total = spectral_l2_norm(CosineSpectrum(d));
    CHECK(total * total <= 2 * bv.projected * bv.projected + 2 * bv.tail * bv.tail);
    for (std::size_t j = 0; j < run.report.err_u.size(); ++j)
      CHECK(run.report.err_u[j] <= run.report.err_u_bound[j] + 1e-12);
  }
}

TEST_CASE("vanishing kernel names the mode") {
  const Example ex = builtin_example(ExampleId::ex1);
  ProblemSpec spec = ex.spec;
  spec.h = TimeProfile([](double t) { return std::cos(2.0 * pi * t); }, 1.0);
  try {
    CutoffInverter inv(spec, 4);
    FAIL("expected SingularKernelError");
  } catch (const SingularKernelError& e) {
    CHECK(e.where() == 0.0);
  }
}

}
