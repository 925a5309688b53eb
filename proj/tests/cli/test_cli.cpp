#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "commands.hpp"
#include "format.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

using namespace diracsea::cli;

namespace {

constexpr double kPi = std::numbers::pi;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "diracsea");
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

using Table = std::vector<std::vector<std::string>>;

Table parse_csv(const std::string& text) {
  Table rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

double num(const std::string& s) { return std::stod(s); }

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("diracsea_cli_test_" + name);
}

}  // namespace

TEST_CASE("fmt and angle parsing") {
  CHECK(fmt(0.5) == "0.5");
  CHECK(fmt(-0.0) == "0");
  CHECK(std::stod(fmt(0.1)) == 0.1);
  CHECK(parse_angle("pi") == doctest::Approx(kPi));
  CHECK(parse_angle("-pi/2") == doctest::Approx(-kPi / 2));
  CHECK(parse_angle("3pi/8") == doctest::Approx(3 * kPi / 8));
  CHECK(parse_angle("0.5*pi") == doctest::Approx(kPi / 2));
  CHECK(parse_angle("1.1781") == 1.1781);
  CHECK(parse_angle("-2e-3") == -2e-3);
  CHECK_THROWS_AS(parse_angle("tau"), std::invalid_argument);
  CHECK_THROWS_AS(parse_angle(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_angle("pi/0"), std::invalid_argument);
  CHECK(parse_angle_list("0.1,pi/2").size() == 2);
  CHECK_THROWS_AS(parse_angle_list("0.1,,0.2"), std::invalid_argument);
}

TEST_CASE("dispersion") {
  const Result d = invoke({"dispersion", "--model", "dirac", "--mdt", "0.2", "--grid", "512"});
  REQUIRE(d.code == 0);
  const Table t = parse_csv(d.out);
  REQUIRE(t.size() == 513);
  CHECK(t[0] == std::vector<std::string>{"p_dx", "E_plus_dt", "E_minus_dt"});
  double prev = -10.0;
  for (std::size_t i = 1; i < t.size(); ++i) {
    CHECK(num(t[i][0]) > prev);
    prev = num(t[i][0]);
    CHECK(std::abs(num(t[i][1])) <= kPi);
    CHECK(std::abs(num(t[i][2])) <= kPi);
  }

  const Result m = invoke({"dispersion", "--model", "modified", "--mdt", "0.2", "--theta", "1.1781", "--grid", "512"});
  REQUIRE(m.code == 0);
  const Table tm = parse_csv(m.out);
  for (std::size_t i = 1; i < tm.size(); ++i) {
    CHECK(std::abs(num(tm[i][1])) < kPi / 2);
    CHECK(std::abs(num(tm[i][2])) < kPi / 2);
  }

  const auto path = temp_path("grid0.csv");
  std::filesystem::remove(path);
  const Result bad = invoke({"dispersion", "--grid", "0", "--out", path.string()});
  CHECK(bad.code == 2);
  CHECK_FALSE(std::filesystem::exists(path));

  const Result phys = invoke({"dispersion", "--grid", "4", "--dx", "0.5", "--c", "2"});
  REQUIRE(phys.code == 0);
  CHECK(parse_csv(phys.out)[0][0] == "p");
  CHECK(num(parse_csv(phys.out)[1][0]) == doctest::Approx(-kPi / 0.5));
}

TEST_CASE("gap-scan") {
  const Result all = invoke({"gap-scan"});
  REQUIRE(all.code == 0);
  const Table t = parse_csv(all.out);
  REQUIRE(t.size() == 6);
  CHECK(t[0] == std::vector<std::string>{"mdt", "theta", "max_abs_E_dt", "gapped"});
  for (std::size_t i = 1; i < t.size(); ++i) {
    CHECK(t[i][3] == "true");
    CHECK(num(t[i][2]) < kPi / 2);
  }

  const Result flat = invoke({"gap-scan", "--mdt", "0.2", "--theta", "0"});
  CHECK(flat.code == 0);
  CHECK(parse_csv(flat.out)[1][3] == "false");

  CHECK(invoke({"gap-scan", "--mdt", "1.6"}).code == 2);
  CHECK(invoke({"gap-scan", "--grid", "32"}).code == 2);
  CHECK(invoke({"gap-scan", "--mdt", "1.5", "--margin", "0.2"}).code == 2);
}

TEST_CASE("evolve") {
  const Result r = invoke({"evolve", "--mdt", "0", "--sites", "32", "--steps", "10"});
  REQUIRE(r.code == 0);
  const Table t = parse_csv(r.out);
  REQUIRE(t.size() == 12);
  CHECK(t[0].size() == 34);
  // start at N/2 = 16 on r; after 10 steps all weight sits on site 26
  CHECK(num(t[11][2 + 26]) == doctest::Approx(1.0));
  for (std::size_t i = 1; i < t.size(); ++i) CHECK(std::abs(num(t[i][1]) - 1.0) <= 1e-9);

  const Result m = invoke({"evolve", "--model", "modified", "--sites", "64", "--steps", "50"});
  REQUIRE(m.code == 0);
  for (const auto& row : parse_csv(m.out)) {
    if (row[0] != "step") CHECK(std::abs(num(row[1]) - 1.0) <= 1e-9);
  }

  CHECK(invoke({"evolve", "--sites", "33", "--require-zone-edge"}).code == 2);
  CHECK(invoke({"evolve", "--sites", "33"}).code == 0);
  CHECK(invoke({"evolve", "--sites", "8", "--start-site", "8"}).code == 2);
  CHECK(invoke({"evolve", "--start-comp", "x"}).code == 2);
}

TEST_CASE("circuit-verify") {
  const Result d = invoke({"circuit-verify", "--model", "dirac", "--sites", "2", "--mdt", "0"});
  REQUIRE(d.code == 0);
  const Table t = parse_csv(d.out);
  REQUIRE(t.size() == 3);
  for (std::size_t i = 1; i < 3; ++i) CHECK(num(t[i][6]) <= 1e-12);

  const Result m = invoke({"circuit-verify", "--model", "modified", "--sites", "4", "--theta", "3pi/8"});
  REQUIRE(m.code == 0);
  for (std::size_t i = 1; i < 3; ++i) CHECK(num(parse_csv(m.out)[i][6]) <= 1e-10);

  CHECK(invoke({"circuit-verify", "--sites", "6"}).code == 2);
}

TEST_CASE("sea") {
  const Result r = invoke({"sea", "--model", "dirac", "--mdt", "0.2", "--sites", "64"});
  REQUIRE(r.code == 0);
  const Table t = parse_csv(r.out);
  REQUIRE(t.size() == 4);
  CHECK(t[1][0] == "low-boundary");
  CHECK(num(t[1][6]) == doctest::Approx(num(t[1][3]) + num(t[1][4])));
  CHECK(num(t[1][6]) > 0.0);
  CHECK(t[2][0] == "fold-boundary");
  CHECK(num(t[2][6]) == doctest::Approx(-(num(t[2][3]) + num(t[2][4]))));

  const Result m = invoke({"sea", "--model", "modified", "--scenario", "exhaustive-min"});
  REQUIRE(m.code == 0);
  CHECK(num(parse_csv(m.out)[1][6]) > 0.0);
  CHECK(invoke({"sea", "--scenario", "middle"}).code == 2);
}

TEST_CASE("dispersion3d") {
  const Result lin = invoke({"dispersion3d", "--mdt", "0", "--slice", "x:0,0", "--grid", "64"});
  REQUIRE(lin.code == 0);
  const Table t = parse_csv(lin.out);
  REQUIRE(t.size() == 65);
  for (std::size_t i = 1; i < t.size(); ++i) {
    const double p = std::abs(num(t[i][0]));
    std::vector<double> e{num(t[i][3]), num(t[i][4]), num(t[i][5]), num(t[i][6])};
    std::sort(e.begin(), e.end());
    if (p < kPi - 1e-9) {
      CHECK(e[0] == doctest::Approx(-p));
      CHECK(e[3] == doctest::Approx(p));
    }
  }

  // the (pi, pi) shift of the fixed components leaves the bands unchanged
  const Table plain = parse_csv(invoke({"dispersion3d", "--slice", "x:0.3,0.1", "--grid", "16"}).out);
  const Table moved = parse_csv(
      invoke({"dispersion3d", "--slice", "x:" + fmt(0.3 - kPi) + "," + fmt(0.1 + kPi), "--grid", "16"}).out);
  REQUIRE(plain.size() == moved.size());
  for (std::size_t i = 1; i < plain.size(); ++i) {
    std::vector<double> e1;
    std::vector<double> e2;
    for (std::size_t c = 3; c < 7; ++c) {
      e1.push_back(num(plain[i][c]));
      e2.push_back(num(moved[i][c]));
    }
    std::sort(e1.begin(), e1.end());
    std::sort(e2.begin(), e2.end());
    for (std::size_t c = 0; c < 4; ++c) CHECK(e1[c] == doctest::Approx(e2[c]).epsilon(1e-12));
  }

  CHECK(invoke({"dispersion3d", "--slice", "w:0,0"}).code == 2);
  CHECK(invoke({"dispersion3d", "--slice", "x:0"}).code == 2);
  CHECK(invoke({"dispersion3d", "--slice", "x0,0"}).code == 2);
}

TEST_CASE("output is byte-identical across runs") {
  const std::vector<std::string> args{"dispersion", "--model", "modified", "--grid", "257"};
  CHECK(invoke(args).out == invoke(args).out);
  const std::vector<std::string> sea{"sea", "--sites", "31"};
  CHECK(invoke(sea).out == invoke(sea).out);
}

TEST_CASE("--out writes the CSV to a file") {
  const auto path = temp_path("out.csv");
  std::filesystem::remove(path);
  const Result r = invoke({"dispersion", "--grid", "8", "--out", path.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::stringstream text;
  text << in.rdbuf();
  CHECK(text.str() == invoke({"dispersion", "--grid", "8"}).out);
  std::filesystem::remove(path);

  CHECK(invoke({"dispersion", "--grid", "8", "--out", "/nonexistent-dir/x.csv"}).code == 2);
}

TEST_CASE("config file supplies defaults") {
  const auto path = temp_path("config.ini");
  {
    std::ofstream cfg(path);
    cfg << "[dispersion]\ngrid = 16\nmdt = 0.4\n";
  }
  const Result r = invoke({"--config", path.string(), "dispersion"});
  REQUIRE(r.code == 0);
  CHECK(parse_csv(r.out).size() == 17);
  CHECK(r.out == invoke({"dispersion", "--grid", "16", "--mdt", "0.4"}).out);
  // the command line wins over the file
  CHECK(parse_csv(invoke({"--config", path.string(), "dispersion", "--grid", "4"}).out).size() == 5);
  std::filesystem::remove(path);
}

TEST_CASE("argument errors") {
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"bogus"}).code == 2);
  CHECK(invoke({"dispersion", "--model", "weyl"}).code == 2);
  CHECK(invoke({"dispersion", "--mdt", "-1"}).code == 2);
  CHECK(invoke({"dispersion", "--model", "modified", "--theta", "pi/2"}).code == 2);
  CHECK(invoke({"dispersion", "--model", "modified", "--theta", "abc"}).code == 2);
  CHECK(invoke({"--help"}).code == 0);
  CHECK(invoke({"dispersion", "--help"}).code == 0);
}
