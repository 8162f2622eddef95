#include <doctest.h>

#include <cmath>
#include <numbers>

#include "heatsrc/error.hpp"
#include "heatsrc/grid.hpp"
#include "heatsrc/quadrature.hpp"
#include "support.hpp"

using namespace heatsrc;
using std::numbers::pi;

TEST_SUITE("grid_quadrature") {

TEST_CASE("grid nodes end exactly at hi") {
  const Grid1D g(0.0, 1.0, 30);
  CHECK(g.size() == 31);
  CHECK(g.node(30) == 1.0);
  CHECK(g.node(0) == 0.0);
  CHECK(g.spacing() == doctest::Approx(1.0 / 30));
  CHECK(g.is_unit());
  CHECK_FALSE(Grid1D(0.0, 2.0, 4).is_unit());
}

TEST_CASE("grid rejects degenerate input") {
  CHECK_THROWS_AS(Grid1D(1.0, 1.0, 4), DomainError);
  CHECK_THROWS_AS(Grid1D(0.0, 1.0, 1), DomainError);
  const Grid1D g = Grid1D::unit(4);
  CHECK_THROWS_AS(GridFunction(g, {1, 2, 3}), DomainError);
  CHECK_THROWS_AS(GridFunction(g, {1, 2, 3, 4, NAN}), DomainError);
  CHECK_THROWS_AS(GridFunction::zeros(g) - GridFunction::zeros(Grid1D::unit(6)), Error);
}

TEST_CASE("simpson weights") {
  const auto w = quad::simpson_weights(Grid1D::unit(4));
  REQUIRE(w.size() == 5);
  const double h3 = 0.25 / 3.0;
  CHECK(w[0] == doctest::Approx(h3));
  CHECK(w[1] == doctest::Approx(4 * h3));
  CHECK(w[2] == doctest::Approx(2 * h3));
  CHECK(w[4] == doctest::Approx(h3));
  CHECK_THROWS_AS(quad::simpson_weights(Grid1D::unit(5)), QuadratureConfigError);
}

TEST_CASE("simpson is exact for cubics and fourth order otherwise") {
  auto cubic = [](double x) { return 3 * x * x * x - x + 2; };
  CHECK(quad::simpson(cubic, 0.0, 2.0, 2) == doctest::Approx(14.0).epsilon(1e-14));
  auto e = [](std::size_t n) { return std::abs(quad::simpson([](double x) { return std::exp(x); }, 0, 1, n) - (std::numbers::e - 1)); };
  const double ratio = e(16) / e(32);
  CHECK(ratio == doctest::Approx(16.0).epsilon(0.02));
}

TEST_CASE("piecewise simpson handles jumps at breakpoints") {
  auto step = [](double x) { return x < 0.3 ? 1.0 : 5.0 * x; };
  const double breaks[] = {0.3};
  const double want = 0.3 + 2.5 * (1.0 - 0.09);
  CHECK(testing::rel_err(quad::piecewise_simpson(step, 0.0, 1.0, breaks, 100), want) < 1e-14);
}

TEST_CASE("exponentially weighted simpson") {
  // h(s) = s on [0, 1]: int s exp(-r (1 - s)) ds = (r - 1 + exp(-r)) / r^2.
  const Grid1D g = Grid1D::unit(200);
  const auto nodes = g.nodes();
  for (double r : {0.0, 1e-6, 0.5, 10.0, 1e3, 1e6}) {
    // closed form cancels below ~1e-3, use its Taylor series there
    const double want = r < 1e-3 ? 0.5 - r / 6 + r * r / 24 : (r - 1 + std::exp(-r)) / (r * r);
    CHECK(testing::rel_err(quad::exp_weighted_simpson(nodes, 1.0, r), want) < 1e-12);
  }
  // quadratic h is integrated exactly at any rate
  std::vector<double> q;
  for (double s : nodes) q.push_back(s * s);
  const double r = 37.0;
  const double want = (r * r - 2 * r + 2 - 2 * std::exp(-r)) / (r * r * r);
  CHECK(testing::rel_err(quad::exp_weighted_simpson(q, 1.0, r), want) < 1e-13);
  CHECK_THROWS_AS(quad::exp_weighted_simpson(std::vector<double>(4, 1.0), 1.0, 1.0),
                  QuadratureConfigError);
}

TEST_CASE("even_at_least") {
  CHECK(quad::even_at_least(0.2) == 2);
  CHECK(quad::even_at_least(3.0) == 4);
  CHECK(quad::even_at_least(4.0) == 4);
  CHECK(quad::even_at_least(4.1) == 6);
}

}
