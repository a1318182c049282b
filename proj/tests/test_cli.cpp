#include <doctest.h>

#include <json.hpp>

#include <cstdlib>
#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "selfdual/cli.hpp"

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
  nlohmann::json json() const { return nlohmann::json::parse(out); }
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "selfdual");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = selfdual::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string tmp_dir() {
  const char* d = std::getenv("SELFDUAL_TEST_TMP");
  return d ? d : ".";
}

}  // namespace

TEST_CASE("envelope fields") {
  const Run r = run({"xa", "--a", "2"});
  REQUIRE(r.code == 0);
  const auto j = r.json();
  CHECK(j["schema_version"] == "1.0");
  CHECK(j["command"] == "xa");
  CHECK(j["inputs"]["a"] == 2.0);
  CHECK(j["results"]["X_a"].get<double>() == doctest::Approx(1.45341185864));
  CHECK(j["provenance"].is_array());
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"xa"}).code == 2);
  CHECK(run({"xa", "--a", "nan"}).code == 2);
  CHECK(run({"xa", "--a", "inf"}).code == 2);
  CHECK(run({"xa", "--a", "0.5"}).code == 2);
  CHECK(run({"xa", "--a", "2", "--dim", "0"}).code == 2);
  CHECK(run({"bounds", "--effort", "max"}).code == 2);
  CHECK(run({"tower", "--d0", "2", "--disc0", "23", "--p", "4", "--m", "1"}).code == 2);
  CHECK(run({"field-check", "--degree", "2", "--disc", "-5"}).code == 2);
  CHECK(run({"series-check", "--order", "9"}).code == 2);
  CHECK(run({"certify", "--witness", "/nonexistent/witness.json"}).code == 2);
}

TEST_CASE("help exits with 0") {
  const Run r = run({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("optimize") != std::string::npos);
}

TEST_CASE("computation failures exit with 1") {
  const std::string path = tmp_dir() + "/cli_bad_witness.json";
  {
    std::ofstream f(path);
    f << R"({"type": "gaussian_combo", "dim": 1, "limit_coeff": 0,
             "nodes": [{"a": 2.0, "t": 1.0}, {"a": 3.0, "t": -1.0}]})";
  }
  const Run r = run({"certify", "--witness", path});
  CHECK(r.code == 1);
  CHECK(r.err.find("negative at infinity") != std::string::npos);
}

TEST_CASE("scan and plot produce CSV") {
  const Run s = run({"scan-a", "--min", "1.5", "--max", "2.5", "--steps", "4"});
  REQUIRE(s.code == 0);
  CHECK(s.out.rfind("a,X_a,A\n", 0) == 0);
  CHECK(std::count(s.out.begin(), s.out.end(), '\n') == 6);
  const Run p = run({"plot-data", "--a", "2", "--what", "G", "--xmax", "3", "--steps", "3"});
  REQUIRE(p.code == 0);
  CHECK(p.out.rfind("X,G\n0,0\n", 0) == 0);
}

TEST_CASE("bounds, series, fields, tower") {
  const auto b = run({"bounds", "--dim", "1", "--effort", "correction"});
  REQUIRE(b.code == 0);
  CHECK(b.json()["results"]["upper"]["value"].get<double>() < 0.4775);
  CHECK(b.json()["results"]["lower"]["value"].get<double>() == doctest::Approx(0.168729929353));

  const auto s = run({"series-check", "--order", "5"});
  REQUIRE(s.code == 0);
  CHECK(s.json()["results"]["all_passed"] == true);
  CHECK(s.json()["results"]["p6"] == "-4/45");

  const auto f = run({"field-check", "--degree", "1", "--disc", "1"});
  REQUIRE(f.code == 0);
  CHECK(f.json()["results"]["verdict"] == "no-real-zero-certified");

  const auto t = run({"tower", "--d0", "2", "--disc0", "23", "--p", "3", "--m", "2"});
  REQUIRE(t.code == 0);
  CHECK(t.json()["results"]["degree"] == 18);
  CHECK(t.json()["results"]["disc"].is_string());
}

TEST_CASE("optimize output round-trips through certify") {
  const auto o = run({"optimize", "--dim", "1", "--grid", "1,2,2.08,3"});
  REQUIRE(o.code == 0);
  const double R = o.json()["results"]["R"].get<double>();
  const std::string path = tmp_dir() + "/cli_witness.json";
  {
    std::ofstream f(path);
    f << o.out;
  }
  const auto c = run({"certify", "--witness", path});
  REQUIRE(c.code == 0);
  CHECK(c.json()["results"]["X"].get<double>() == doctest::Approx(R).epsilon(1e-9));
}

TEST_CASE("hermite subcommand") {
  const auto h = run({"hermite", "--modes", "1", "--starts", "4"});
  REQUIRE(h.code == 0);
  CHECK(h.json()["results"]["pi_A2"].get<double>() == doctest::Approx(1.5));
}
