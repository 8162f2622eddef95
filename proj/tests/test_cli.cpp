#include <doctest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "heatsrc/csv.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
};

Result run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + HEATSOURCE_BIN + " " + args + " 2>&1";
  Result r{-1, {}};
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  while (std::fgets(buf, sizeof buf, pipe)) r.out += buf;
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

double field(const std::string& out, const std::string& key) {
  const auto pos = out.find(key + "=");
  REQUIRE(pos != std::string::npos);
  return std::stod(out.substr(pos + key.size() + 1));
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_CASE("example then forward gives final data with mean one half") {
  fs::remove_all("cli_ex1");
  const auto ex = run("example ex1 --out-dir cli_ex1");
  REQUIRE(ex.code == 0);
  const auto fw = run("forward --config cli_ex1/ex1.cfg --t 1");
  REQUIRE(fw.code == 0);
  CHECK(std::abs(field(fw.out, "mean") - 0.5) < 1e-6);
  const auto table = heatsrc::csv::read("cli_ex1/u.csv");
  REQUIRE(table.rows.size() == 51);
  double sum = 0.0;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const double w = (i == 0 || i == 50) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    sum += w * table.rows[i][2];
  }
  CHECK(std::abs(sum * 0.02 / 3.0 - 0.5) < 1e-6);
}

TEST_CASE("noiseless cut-off inversion prints a tiny source error") {
  const auto r = run("invert-cutoff --theta 12 --noiselv 0 --example ex1 --out-dir cli_cut");
  REQUIRE(r.code == 0);
  CHECK(field(r.out, "err_f") <= 1e-6);
  CHECK(fs::exists("cli_cut/profile_f.csv"));
  CHECK(fs::exists("cli_cut/field_u.csv"));
}

TEST_CASE("usage errors exit with 2") {
  auto r = run("noise --noiselv 0.1");
  CHECK(r.code == 2);
  CHECK(r.out.find("Usage") != std::string::npos);
  CHECK(run("").code == 2);
  CHECK(run("frobnicate").code == 2);
  CHECK(run("invert-cutoff --theta abc").code == 2);
  std::ofstream("cli_bad.cfg") << "bogus = 1\n";
  CHECK(run("forward --config cli_bad.cfg").code == 2);
  CHECK(run("invert-iter --rule sometimes --out-dir cli_iter").code == 2);
  CHECK(run("--help").code == 0);
}

TEST_CASE("numerical errors exit with 3") {
  const auto r = run("invert-cutoff --noiselv 0 --out-dir cli_num");
  CHECK(r.code == 3);
  CHECK(r.out.find("error:") != std::string::npos);
  CHECK(run("invert-cutoff --theta 60 --noiselv 0.01 --out-dir cli_num").code == 3);
}

TEST_CASE("config overrides flags and the environment overrides the config seed") {
  std::ofstream("cli_seed.cfg") << "seed = 5\nnoiselv = 0.05\n[invert-cutoff]\ntheta = 6\n";
  const auto base = run("invert-cutoff --config cli_seed.cfg --seed 1 --theta 12 --out-dir cli_cfg");
  REQUIRE(base.code == 0);
  const auto five = run("invert-cutoff --seed 5 --noiselv 0.05 --theta 6 --out-dir cli_cfg");
  CHECK(base.out == five.out);
  const auto env = run("invert-cutoff --config cli_seed.cfg --out-dir cli_cfg", "HEATSOURCE_SEED=8");
  const auto eight = run("invert-cutoff --seed 8 --noiselv 0.05 --theta 6 --out-dir cli_cfg");
  CHECK(env.out == eight.out);
  CHECK(env.out != base.out);
}

TEST_CASE("noise subcommand perturbs a data file") {
  {
    std::ofstream out("cli_data.csv");
    out << "x,mu\n";
    for (int i = 0; i <= 10; ++i) out << i / 10.0 << ",1\n";
  }
  const auto a = run("noise --in cli_data.csv --out cli_noisy_a.csv --noiselv 0.1 --seed 3");
  const auto b = run("noise --in cli_data.csv --out cli_noisy_b.csv --noiselv 0.1 --seed 3");
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(slurp("cli_noisy_a.csv") == slurp("cli_noisy_b.csv"));
  const auto t = heatsrc::csv::read("cli_noisy_a.csv");
  CHECK(t.header == std::vector<std::string>{"x", "mu"});
  for (const auto& row : t.rows) CHECK(std::abs(row[1] - 1.0) <= 0.1);
}

TEST_CASE("iterative subcommand in both spaces and both rules") {
  for (const char* args : {"--space mode --rule a_priori", "--space mode --rule discrepancy",
                           "--space line --rule a_priori", "--space line --rule discrepancy"}) {
    const auto r = run(std::string("invert-iter ") + args + " --out-dir cli_iter");
    CHECK(r.code == 0);
    CHECK(r.out.find("n_stop=") != std::string::npos);
  }
  const std::string res = slurp("cli_iter/residuals.csv");
  CHECK(res.rfind("n,residual,threshold\n", 0) == 0);
}

TEST_CASE("table1 subcommand writes deterministic files") {
  const std::string args = "table1 --seeds 2 --noiselv 0.05 --theta 6 --threads 2 --out-dir ";
  REQUIRE(run(args + "cli_t1a").code == 0);
  REQUIRE(run(args + "cli_t1b").code == 0);
  const std::string a = slurp("cli_t1a/table1.csv");
  CHECK(a == slurp("cli_t1b/table1.csv"));
  CHECK(std::count(a.begin(), a.end(), '\n') == 3);
  CHECK(fs::exists("cli_t1a/table1_summary.csv"));
  CHECK(fs::exists("cli_t1a/table1_meta.csv"));
}
