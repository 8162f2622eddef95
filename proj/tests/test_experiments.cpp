#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "heatsrc/error.hpp"
#include "heatsrc/experiments.hpp"
#include "support.hpp"

using namespace heatsrc;
using std::numbers::pi;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "heatsrc_unit" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_SUITE("experiments") {

TEST_CASE("built-in examples") {
  const Example e1 = builtin_example(ExampleId::ex1);
  CHECK(e1.mu0(0.25) == doctest::Approx(std::cos(0.5 * pi)));
  CHECK(e1.spec.h.value(0.7) == doctest::Approx(0.7));
  CHECK(e1.f(0.0) == doctest::Approx(4.0));
  CHECK(static_cast<bool>(e1.u_closed_form));

  testing::WarningCapture quiet;
  const Example e2 = builtin_example(ExampleId::ex2);
  for (double x : {0.0, 0.3, 1.0}) CHECK(e2.mu0(x) == 0.0);
  CHECK(e2.f(0.25) == doctest::Approx(0.25));
  CHECK(e2.f(0.75) == doctest::Approx(0.25));
  CHECK_FALSE(static_cast<bool>(e2.u_closed_form));

  const Example e3 = builtin_example(ExampleId::ex3);
  CHECK(e3.f(0.5) == 0.5);
  CHECK(e3.f(0.1) == 0.0);
  CHECK(e3.f(0.9) == 0.0);
  CHECK(e3.spec.h.value(0.0) == doctest::Approx(2.0));

  CHECK(parse_example("2") == ExampleId::ex2);
  CHECK_THROWS_AS(parse_example("ex4"), ParameterError);
  CHECK(example_name(ExampleId::ex3) == "ex3");
}

TEST_CASE("quantiles") {
  CHECK(quantile({3.0, 1.0, 2.0}, 0.5) == 2.0);
  CHECK(quantile({1.0, 2.0, 3.0, 4.0}, 0.5) == 2.5);
  CHECK(quantile({1.0, 2.0, 3.0, 4.0, 5.0}, 0.25) == 2.0);
  CHECK_THROWS_AS(quantile({}, 0.5), DomainError);
}

TEST_CASE("batch order and bytes do not depend on the thread count") {
  Table1Config cfg;
  cfg.rows = {{0.01, {6, 12}}, {0.2, {6}}};
  cfg.seeds = 4;
  cfg.threads = 1;
  const auto one = run_table1(cfg);
  cfg.threads = 4;
  const auto four = run_table1(cfg);
  REQUIRE(one.size() == 3 * 4);
  REQUIRE(four.size() == one.size());
  std::size_t i = 0;
  for (const auto& [lv, th] : std::vector<std::pair<double, std::size_t>>{{0.01, 6}, {0.01, 12}, {0.2, 6}})
    for (std::uint64_t s = 1; s <= 4; ++s, ++i) {
      CHECK(one[i].noise_level == lv);
      CHECK(one[i].theta == th);
      CHECK(one[i].seed == s);
    }
  const fs::path d = scratch_dir("batch");
  write_table1_csv(d / "a.csv", one);
  write_table1_csv(d / "b.csv", four);
  CHECK(slurp(d / "a.csv") == slurp(d / "b.csv"));
  CHECK(slurp(d / "a.csv").rfind("noise_level,delta,theta,seed,err_f,err_u_max,n_stop\n", 0) == 0);

  const auto stats = summarize(one);
  REQUIRE(stats.size() == 3);
  CHECK(stats[0].runs == 4);
  CHECK(stats[2].noise_level == 0.2);
}

TEST_CASE("reports satisfy the u error bound") {
  Table1Config cfg;
  cfg.rows = {{0.05, {6, 12}}};
  cfg.seeds = 5;
  for (const auto& r : run_table1(cfg)) {
    CHECK(r.err_f >= 0.0);
    REQUIRE(r.err_u.size() == 21);
    for (std::size_t j = 0; j < r.err_u.size(); ++j) CHECK(r.err_u[j] <= r.err_u_bound[j] + 1e-12);
  }
}

TEST_CASE("partial results are flushed when a run fails") {
  Table1Config cfg;
  cfg.rows = {{0.01, {6, 60}}};
  cfg.seeds = 3;
  cfg.threads = 2;
  const fs::path d = scratch_dir("partial");
  CHECK_THROWS_AS(run_table1(cfg, d), ResolutionError);
  const std::string text = slurp(d / "table1.csv");
  CHECK(std::count(text.begin(), text.end(), '\n') == 4);
}

TEST_CASE("profile and field files") {
  const CutoffExperiment exp(builtin_example(ExampleId::ex1), 50, 20);
  const auto run = exp.run(0.01, 1, 12);
  const fs::path d = scratch_dir("files");
  write_profile_csv(d / "profile_f.csv", exp.exact_f(), run.result.f_delta);
  std::vector<GridFunction> truth;
  for (std::size_t j = 0; j < exp.t_nodes().size(); ++j) truth.push_back(exp.exact_u(j));
  write_field_csv(d / "field_u.csv", exp.t_nodes(), truth, run.u_recon);
  write_residuals_csv(d / "residuals.csv", {1.0, 0.5}, 0.7);
  const std::string prof = slurp(d / "profile_f.csv");
  CHECK(prof.rfind("x,f_true,f_recon\n", 0) == 0);
  CHECK(std::count(prof.begin(), prof.end(), '\n') == 52);
  const std::string field = slurp(d / "field_u.csv");
  CHECK(std::count(field.begin(), field.end(), '\n') == 1 + 51 * 21);
  CHECK(slurp(d / "residuals.csv") == "n,residual,threshold\n0,1,0.7\n1,0.5,0.7\n");
}

}
