#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "heatsrc/config.hpp"
#include "heatsrc/csv.hpp"

using namespace heatsrc;
namespace fs = std::filesystem;

namespace {

Config parse(const std::string& text) {
  std::istringstream in(text);
  return Config::parse(in);
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "heatsrc_unit";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_SUITE("config_csv") {

TEST_CASE("global keys are shadowed by the section") {
  const Config c = parse("seed = 3   # global\nk=2\n\n[table1]\nseed = 9\nseeds = 10\n[forward]\nt = 1\n");
  auto t1 = c.resolved("table1");
  CHECK(t1["seed"] == "9");
  CHECK(t1["k"] == "2");
  CHECK(t1["seeds"] == "10");
  CHECK(t1.count("t") == 0);
  auto fw = c.resolved("forward");
  CHECK(fw["seed"] == "3");
  CHECK(fw["t"] == "1");
  CHECK(c.resolved("noise").size() == 2);
  CHECK(c.has_section("table1"));
  CHECK_FALSE(c.has_section("noise"));
}

TEST_CASE("malformed config") {
  CHECK_THROWS_AS(parse("seed 3\n"), ConfigError);
  CHECK_THROWS_AS(parse("[table1\n"), ConfigError);
  CHECK_THROWS_AS(parse("[]\n"), ConfigError);
  CHECK_THROWS_AS(parse("= 4\n"), ConfigError);
  CHECK_THROWS_AS(parse("a = 1\na = 2\n"), ConfigError);
  CHECK_THROWS_AS(Config::load("/nonexistent/heatsrc.cfg"), ConfigError);
}

TEST_CASE("numbers round-trip with a dot separator") {
  CHECK(csv::num(0.1) == "0.1");
  CHECK(csv::num(1e-300) == "1e-300");
  CHECK(csv::num(-2.5) == "-2.5");
  CHECK(csv::num(42) == "42");
  const double x = 0.1 + 0.2;
  CHECK(std::stod(csv::num(x)) == x);
}

TEST_CASE("writer and reader") {
  const fs::path p = scratch("t.csv");
  {
    csv::Writer w(p, {"x", "value"});
    w.row({csv::num(0.0), csv::num(1.5)});
    w.row({csv::num(0.5), csv::num(-2.0)});
    CHECK_THROWS_AS(w.row({"1"}), std::invalid_argument);
  }
  std::ifstream in(p, std::ios::binary);
  std::string all((std::istreambuf_iterator<char>(in)), {});
  CHECK(all == "x,value\n0,1.5\n0.5,-2\n");
  const auto t = csv::read(p);
  CHECK(t.header == std::vector<std::string>{"x", "value"});
  REQUIRE(t.rows.size() == 2);
  CHECK(t.rows[1][1] == -2.0);
  CHECK(t.column("value") == 1);
  CHECK_THROWS_AS(t.column("nope"), std::invalid_argument);
  std::ofstream(scratch("bad.csv")) << "x,y\n1,abc\n";
  CHECK_THROWS_AS(csv::read(scratch("bad.csv")), std::runtime_error);
}

}
