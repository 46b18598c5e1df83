#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cli.hpp"

#include "json.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using nlohmann::json;
using pdmgk::cli::run;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string &text) {
  std::vector<std::string> v;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);)
    v.push_back(l);
  return v;
}

std::vector<double> fields(const std::string &line) {
  std::vector<double> v;
  std::istringstream in(line);
  for (std::string f; std::getline(in, f, ',');)
    v.push_back(std::stod(f));
  return v;
}

fs::path scratch(const std::string &name) {
  const fs::path dir = fs::temp_directory_path() / "pdmgk_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

} // namespace

TEST_CASE("spectrum CSV") {
  const Result r = call({"spectrum", "--alpha", "0.2", "--n-max", "3"});
  REQUIRE(r.code == pdmgk::cli::kSuccess);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 5);
  CHECK(ls[0] == "alpha,n,E_n,e_n");
  const auto row0 = fields(ls[1]);
  CHECK(row0[1] == 0.0);
  CHECK(row0[3] == 0.0);
  // E_n at full precision round-trips
  CHECK(fields(ls[4])[1] == 3.0);
}

TEST_CASE("alpha lists") {
  const Result comma = call({"spectrum", "--alpha", "0.1,0.4", "--n-max", "1"});
  const Result spaced = call({"spectrum", "--alpha", "0.1", "0.4", "--n-max", "1"});
  REQUIRE(comma.code == 0);
  CHECK(comma.out == spaced.out);
  CHECK(lines(comma.out).size() == 5);
}

TEST_CASE("pn footer and peak placement") {
  const Result r = call({"pn", "--alpha", "0.2", "--peak-at", "5", "--n-max", "12"});
  REQUIRE(r.code == 0);
  const auto ls = lines(r.out);
  CHECK(ls[0] == "alpha,J,n,P_n");
  CHECK(ls.size() == 1 + 13 + 1);
  CHECK(ls.back().rfind("# alpha=0.2", 0) == 0);
  CHECK(ls.back().find("peak_n=5") != std::string::npos);
  CHECK(ls.back().find("sum_P=") != std::string::npos);
}

TEST_CASE("stats JSON") {
  const Result r = call({"stats", "--alpha", "0.3", "--grid", "0.5:5:10", "--format", "json"});
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["columns"] == json({"alpha", "J", "g2", "Q", "mean_N"}));
  CHECK(doc["rows"].size() == 10);
  for (const auto &row : doc["rows"]) {
    CHECK(row[2].get<double>() < 1.0);
    CHECK(row[3].get<double>() < 0.0);
  }
  CHECK(doc["footer"][0]["max_series_gap"].get<double>() < 1e-9);
}

TEST_CASE("weight and mass") {
  const Result w = call({"weight", "--alpha", "0.2,0.4", "--grid", "0:4:5"});
  REQUIRE(w.code == 0);
  CHECK(w.out.find("int_Wbar=") != std::string::npos);
  const Result m = call({"mass", "--alpha", "0.5", "--grid", "-1:1:3"});
  REQUIRE(m.code == 0);
  const auto ls = lines(m.out);
  REQUIRE(ls.size() == 4);
  CHECK(fields(ls[2])[2] == 1.0);
  CHECK(fields(ls[1])[2] == doctest::Approx(1.0 / 2.25).epsilon(1e-15));
}

TEST_CASE("wigner output") {
  const Result r = call({"wigner", "--alpha", "0.1", "--J", "1", "--gamma", "3.141592653589793",
                         "--kernel", "fock", "--grid", "-3:3:41"});
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["kernel"] == "fock");
  CHECK(doc["re_z"].size() == 41);
  CHECK(doc["values"].size() == 41 * 41);
  CHECK(doc["min_value"].get<double>() < 0.0);
  CHECK(call({"wigner", "--alpha", "0.1", "--grid", "-3:2:41"}).code == pdmgk::cli::kUsage);
  CHECK(call({"wigner", "--alpha", "0.1", "--grid", "-3:3:8"}).code == pdmgk::cli::kUsage);
  CHECK(call({"wigner", "--alpha", "0.1", "--kernel", "husimi"}).code == pdmgk::cli::kUsage);
  CHECK(call({"wigner", "--alpha", "0.1,0.2"}).code == pdmgk::cli::kUsage);
}

TEST_CASE("verify exit codes and determinism") {
  const Result ok = call({"verify", "--alpha", "0.2"});
  CHECK(ok.code == pdmgk::cli::kSuccess);
  CHECK(json::parse(ok.out)["overall"] == true);
  const Result again = call({"verify", "--alpha", "0.2"});
  CHECK(ok.out == again.out);
  const Result bad = call({"verify", "--alpha", "0.2", "--corrupt-spectrum"});
  CHECK(bad.code == pdmgk::cli::kVerificationFailed);
  CHECK(json::parse(bad.out)["overall"] == false);
  CHECK(call({"verify", "--alpha", "0.2", "--format", "csv"}).code == pdmgk::cli::kUsage);
  CHECK(call({"verify", "--alpha", "0.2", "--level", "slow"}).code == pdmgk::cli::kUsage);
}

TEST_CASE("usage errors") {
  CHECK(call({}).code == pdmgk::cli::kUsage);
  CHECK(call({"frobnicate"}).code == pdmgk::cli::kUsage);
  CHECK(call({"spectrum", "--alpha", "1.5"}).code == pdmgk::cli::kUsage);
  CHECK(call({"spectrum", "--alpha", "0"}).code == pdmgk::cli::kUsage);
  CHECK(call({"spectrum", "--energy-convention", "other"}).code == pdmgk::cli::kUsage);
  CHECK(call({"mass", "--grid", "1:0:5"}).code == pdmgk::cli::kUsage);
  CHECK(call({"mass", "--grid", "0:1"}).code == pdmgk::cli::kUsage);
  CHECK(call({"pn", "--J", "-2"}).code == pdmgk::cli::kUsage);
  CHECK(call({"spectrum", "--format", "xml"}).code == pdmgk::cli::kUsage);
  const Result help = call({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("spectrum") != std::string::npos);
}

TEST_CASE("config file and flag precedence") {
  const fs::path cfg = scratch("cfg.json");
  {
    std::ofstream f(cfg);
    f << R"({"alpha": [0.3], "n_max": 2, "energy_convention": "printed"})";
  }
  const Result from_cfg = call({"spectrum", "--config", cfg.string()});
  REQUIRE(from_cfg.code == 0);
  const auto ls = lines(from_cfg.out);
  REQUIRE(ls.size() == 4);
  CHECK(fields(ls[1])[0] == 0.3);

  const Result flag_wins = call({"spectrum", "--config", cfg.string(), "--alpha", "0.6"});
  REQUIRE(flag_wins.code == 0);
  CHECK(fields(lines(flag_wins.out)[1])[0] == 0.6);
  CHECK(lines(flag_wins.out).size() == 4);

  const Result explicit_printed =
      call({"spectrum", "--alpha", "0.3", "--n-max", "2", "--energy-convention", "printed"});
  CHECK(explicit_printed.out == from_cfg.out);

  const fs::path bad = scratch("bad.json");
  {
    std::ofstream f(bad);
    f << R"({"alpha": 0.3, "colour": "blue"})";
  }
  CHECK(call({"spectrum", "--config", bad.string()}).code == pdmgk::cli::kUsage);
  CHECK(call({"spectrum", "--config", scratch("missing.json").string()}).code ==
        pdmgk::cli::kUsage);
}

TEST_CASE("--out writes the table and a sidecar") {
  const fs::path out = scratch("weight.csv");
  fs::remove(out);
  fs::remove(out.string() + ".meta.json");
  const Result r = call({"weight", "--alpha", "0.2,0.4", "--grid", "0:2:3", "--out", out.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  CHECK(slurp(out) == call({"weight", "--alpha", "0.2,0.4", "--grid", "0:2:3"}).out);
  const json meta = json::parse(slurp(out.string() + ".meta.json"));
  CHECK(meta["command"] == "weight");
  CHECK(meta["x_label"] == "J");
  CHECK(meta["legend"].size() == 2);
  CHECK(meta["params"]["alpha"].size() == 2);
}
