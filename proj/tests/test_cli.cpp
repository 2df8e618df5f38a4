#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "generators.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = magprop::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const char* dir = std::getenv("MAGPROP_TMP");
  return (dir ? fs::path(dir) : fs::temp_directory_path()) / name;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream f(p);
  f << text;
}

// CSV body rows (comments and header skipped), split on commas.
std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (header) {
      header = false;
      continue;
    }
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string x;
    while (std::getline(ss, x, ',')) f.push_back(x);
    if (!line.empty() && line.back() == ',') f.emplace_back();
    rows.push_back(f);
  }
  return rows;
}

}  // namespace

TEST_CASE("eval: Landau diagonal transverse value") {
  const Run r = run({"eval", "--system", "landau", "--B", "1", "--r", "0,0", "--rp", "0,0", "--tau", "1", "--transverse"});
  REQUIRE(r.code == 0);
  const auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 1);
  REQUIRE(rows[0].size() == 10);
  const std::complex<double> k(std::stod(rows[0][8]), std::stod(rows[0][9]));
  const std::complex<double> expect = 0.5 / (2 * std::numbers::pi * std::complex<double>(0, 1) * std::sin(0.5));
  CHECK(std::abs(k - expect) < 1e-15);
  CHECK(r.out.rfind("# magprop eval", 0) == 0);
  CHECK(r.out.find("\"units\":\"natural\"") != std::string::npos);
}

TEST_CASE("eval: full kernel carries the longitudinal free factor") {
  const Run a = run({"eval", "--system", "free", "--r", "0,0", "--rp", "0,0", "--tau", "1", "--output", "json"});
  REQUIRE(a.code == 0);
  const json j = json::parse(a.out);
  const double re = j["records"][0]["K_re"], im = j["records"][0]["K_im"];
  // (2 pi i)^{-3/2}
  const std::complex<double> expect = std::pow(std::complex<double>(0, 2 * std::numbers::pi), -1.5);
  CHECK(std::abs(std::complex<double>(re, im) - expect) < 1e-15);
  CHECK(j["config"]["system"] == "free");
}

TEST_CASE("eval: 1000-row batch is byte-identical across runs") {
  const fs::path q = scratch("magprop_batch.csv");
  std::ostringstream text;
  text << "x1,x2,x3,x1p,x2p,x3p,tau_re,tau_im\n";
  gen::Gen g(71);
  for (int i = 0; i < 1000; ++i) {
    text.precision(17);
    text << g.uniform(-2, 2) << "," << g.uniform(-2, 2) << "," << g.uniform(-1, 1) << "," << g.uniform(-2, 2) << ","
         << g.uniform(-2, 2) << "," << g.uniform(-1, 1) << "," << g.uniform(0.1, 2.9) << "," << -g.uniform(0, 0.5)
         << "\n";
  }
  write_file(q, text.str());
  const std::vector<std::string> args{"eval", "--system", "osc_b", "--omega0", "1", "--gauge", "landau-x", "--queries", q.string()};
  const Run a = run(args), b = run(args);
  REQUIRE(a.code == 0);
  CHECK(csv_rows(a.out).size() == 1000);
  CHECK(a.out == b.out);
  fs::remove(q);
}

TEST_CASE("eval: malformed row is reported with its number") {
  const fs::path q = scratch("magprop_bad.csv");
  write_file(q, "x1,x2,x3,x1p,x2p,x3p,tau_re,tau_im\n0,0,0,0,0,0,1,0\n0,0,0,0,0,0,1,0\n0,0,zero,0,0,0,1,0\n");
  const Run r = run({"eval", "--queries", q.string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("row 3") != std::string::npos);
  CHECK(r.err.find("line 4") != std::string::npos);

  write_file(q, "0,0,0,0,0,0,1\n");
  CHECK(run({"eval", "--queries", q.string()}).code == 2);
  fs::remove(q);
  CHECK(run({"eval", "--queries", scratch("magprop_missing.csv").string()}).code == 2);
}

TEST_CASE("eval: caustic rows fail fast or are skipped with --keep-going") {
  const fs::path q = scratch("magprop_caustic.csv");
  // w = 0.5, so tau = 2 pi is a caustic.
  write_file(q, "0,0,0,1,0,0,1,0\n0,0,0,1,0,0,6.283185307179586,0\n0,0,0,1,0,0,2,0\n");
  const Run fast = run({"eval", "--queries", q.string()});
  CHECK(fast.code == 3);
  CHECK(fast.err.find("row 2") != std::string::npos);
  CHECK(csv_rows(fast.out).size() == 1);

  const Run keep = run({"eval", "--queries", q.string(), "--keep-going"});
  CHECK(keep.code == 3);
  const auto rows = csv_rows(keep.out);
  REQUIRE(rows.size() == 3);
  CHECK(std::isnan(std::stod(rows[1][8])));
  CHECK(std::isfinite(std::stod(rows[2][8])));
  fs::remove(q);
}

TEST_CASE("units and config handling") {
  CHECK(run({"eval", "--natural-units", "--mass", "2", "--r", "0,0", "--rp", "0,0", "--tau", "1"}).code == 2);
  CHECK(run({"eval", "--natural-units", "--units", "explicit", "--r", "0,0", "--rp", "0,0", "--tau", "1"}).code == 2);
  CHECK(run({"eval", "--units", "explicit", "--mass", "2", "--r", "0,0", "--rp", "0,0", "--tau", "1"}).code == 0);
  CHECK(run({"eval", "--system", "graphene", "--r", "0,0", "--rp", "0,0", "--tau", "1"}).code == 2);
  CHECK(run({"eval", "--r", "0;0", "--rp", "0,0", "--tau", "1"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);

  const fs::path cfg = scratch("magprop_cfg.json");
  write_file(cfg, R"({"system": "osc_b", "units": "explicit", "params": {"m": 2, "B": 3, "omega0": 0.5}, "output": "json"})");
  const Run a = run({"spectrum", "--config", cfg.string(), "--l-max", "0", "--n-max", "0"});
  REQUIRE(a.code == 0);
  const json j = json::parse(a.out);
  CHECK(j["config"]["params"]["m"] == 2.0);
  // w = 0.75, W = sqrt(0.8125): E00 = W
  CHECK(double(j["entries"][0]["energy"]) == doctest::Approx(std::sqrt(0.8125)));

  const Run b = run({"spectrum", "--config", cfg.string(), "--l-max", "0", "--n-max", "0", "--B", "0"});
  REQUIRE(b.code == 0);
  CHECK(double(json::parse(b.out)["entries"][0]["energy"]) == doctest::Approx(0.5));

  write_file(cfg, R"({"system": "osc_b", "colour": "red"})");
  CHECK(run({"spectrum", "--config", cfg.string()}).code == 2);
  fs::remove(cfg);
}

TEST_CASE("spectrum tables") {
  const Run l = run({"spectrum", "--system", "landau", "--n-max", "2"});
  REQUIRE(l.code == 0);
  const auto rows = csv_rows(l.out);
  REQUIRE(rows.size() == 3);
  for (int n = 0; n < 3; ++n) {
    CHECK(std::stod(rows[n][1]) == doctest::Approx(n + 0.5));
    CHECK(std::stod(rows[n][2]) == doctest::Approx(1 / (2 * std::numbers::pi)));
  }

  const Run o = run({"spectrum", "--system", "osc_b", "--omega0", "1", "--l-max", "2", "--n-max", "2"});
  REQUIRE(o.code == 0);
  const auto orows = csv_rows(o.out);
  const double expect[4] = {1.118033988749895, 1.7360679774997898, 2.3541019662496847, 2.73606797749979};
  for (int k = 0; k < 4; ++k) CHECK(std::stod(orows[k][1]) == doctest::Approx(expect[k]).epsilon(1e-14));
  CHECK(orows[2][0] == "0;2");

  const Run iso = run({"spectrum", "--system", "osc_b", "--omega0", "1", "--B", "0", "--l-max", "1", "--n-max", "1"});
  REQUIRE(iso.code == 0);
  const auto irows = csv_rows(iso.out);
  CHECK(std::stod(irows[0][1]) == doctest::Approx(1.0));
  CHECK(std::stod(irows[3][1]) == doctest::Approx(3.0));

  CHECK(run({"spectrum", "--system", "free"}).code == 2);
  CHECK(run({"spectrum", "--system", "landau", "--n-max", "-1"}).code == 2);
}

TEST_CASE("spectrum with the grid oracle column") {
  const Run o = run({"spectrum", "--system", "osc_b", "--omega0", "1", "--l-max", "1", "--n-max", "1", "--oracle",
                     "--grid-L", "10", "--grid-n", "64"});
  REQUIRE(o.code == 0);
  for (const auto& row : csv_rows(o.out)) {
    REQUIRE(row.size() == 4);
    CHECK(std::abs(std::stod(row[3]) / std::stod(row[1]) - 1.0) < 0.02);
  }
}

TEST_CASE("trace") {
  const Run l = run({"trace", "--system", "landau", "--beta", "2", "--output", "json"});
  REQUIRE(l.code == 0);
  const json j = json::parse(l.out);
  CHECK(double(j["partition_function_per_area"]["re"]) == doctest::Approx(0.06771391313789567).epsilon(1e-12));

  const Run o = run({"trace", "--system", "osc_b", "--omega0", "1", "--beta", "2"});
  REQUIRE(o.code == 0);
  const auto rows = csv_rows(o.out);
  REQUIRE(rows.size() == 3);
  CHECK(std::stod(rows[0][3]) == doctest::Approx(std::stod(rows[2][3])).epsilon(1e-10));

  CHECK(run({"trace", "--system", "landau", "--tau", "1"}).code == 2);
  CHECK(run({"trace", "--system", "osc_b"}).code == 2);
  CHECK(run({"trace", "--system", "osc_b", "--beta", "1"}).code == 2);  // omega0 = 0
}

TEST_CASE("verify emits JSON and the exit status follows the checks") {
  const Run a = run({"verify", "--suite", "algebra"});
  CHECK(a.code == 0);
  const json j = json::parse(a.out);
  CHECK(j["pass"] == true);
  REQUIRE(j["suites"].size() == 1);
  CHECK(double(j["suites"][0]["seconds"]) < 5.0);
  for (const auto& c : j["suites"][0]["checks"]) {
    CHECK(c.contains("name"));
    CHECK(c.contains("value"));
    CHECK(c.contains("tolerance"));
  }

  const Run g = run({"verify", "--suite", "gauge"});
  CHECK(g.code == 0);
  for (const auto& c : json::parse(g.out)["suites"][0]["checks"]) {
    const std::string name = c["name"];
    if (name.rfind("gauge covariance", 0) == 0) CHECK(double(c["value"]) <= 1e-12);
  }
  CHECK(run({"verify", "--suite", "everything"}).code == 2);
}

TEST_CASE("oracle-diag") {
  const Run r = run({"oracle-diag", "--system", "osc_b", "--omega0", "1", "--grid-L", "8", "--grid-n", "40", "--k", "3"});
  REQUIRE(r.code == 0);
  const auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 3);
  CHECK(std::stod(rows[0][1]) == doctest::Approx(1.118).epsilon(0.01));
  CHECK(std::stod(rows[0][2]) < 1e-3);
  CHECK(r.out.find("index,energy,boundary_mass_fraction") != std::string::npos);

  const Run starved = run({"oracle-diag", "--grid-L", "8", "--grid-n", "80", "--k", "6", "--max-iterations", "1"});
  CHECK(starved.code == 4);
  CHECK(starved.err.find("iterations") != std::string::npos);
  CHECK(run({"oracle-diag", "--grid-n", "8"}).code == 2);
}
