#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "sumrules/config.hpp"
#include "sumrules/error.hpp"
#include "sumrules/report.hpp"
#include "../support/oracles.hpp"

using namespace sumrules;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("sumrules_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::vector<double>> parse_csv(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

TEST_CASE("config defaults") {
  const auto c = parse_config("");
  CHECK(c.command == Command::sumrule);
  CHECK(c.weight_name == "sin4");
  CHECK(c.horizons == std::vector<std::size_t>{64, 128, 256, 512, 1024});
  CHECK(c.tolerances.quadrature == 1e-10);
  CHECK(c.tolerances.eigenvalue == 1e-12);
  CHECK(c.matrix().is_free());
}

TEST_CASE("config round trip") {
  const std::string text =
      "command = diagnose  # scan\n"
      "[matrix]\nkind = oscillatory\nalpha2 = 1\ngamma2 = .5\nmu = 1\n"
      "[weight]\ncoefficients = 1, 0.5\n"
      "[scan]\nhorizons = 8,16 , 32\nslope = 0.1\n";
  const auto once = emit_config(parse_config(text));
  CHECK(emit_config(parse_config(once)) == once);
  const auto c = parse_config(once);
  CHECK(c.kind == FamilyKind::oscillatory);
  CHECK(c.gamma2 == 0.5);
  CHECK(c.weight().coefficient(1) == 0.5);
  CHECK(c.thresholds.slope == 0.1);
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(1.0 / 3.0) == "0.3333333333333333");
}

TEST_CASE("config errors carry line and key") {
  auto message = [](const std::string& text) {
    try {
      parse_config(text);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::config);
      return std::string(e.what());
    }
    return std::string("no error");
  };
  CHECK(message("command = sumrule\n[matrix]\nb = 1, x\n").find("line 3, key 'matrix.b'") != std::string::npos);
  CHECK(message("[nope]\n").find("unknown section") != std::string::npos);
  CHECK(message("colour = red\n").find("unknown key") != std::string::npos);
  CHECK(message("[scan]\nhorizons = 8, 4, 16\n").find("strictly increasing") != std::string::npos);
  CHECK(message("variant = v\n").find("line 1") != std::string::npos);
}

TEST_CASE("spectrum command") {
  auto c = parse_config("command = spectrum\n[matrix]\nb = 1.5\n");
  const auto dir = scratch("spectrum");
  const auto out = run(c, {dir});
  CHECK(out.exit_code == exit_ok);
  const auto j = nlohmann::json::parse(out.json);
  REQUIRE(j["result"]["eigenvalues"].size() == 1);
  CHECK(j["result"]["eigenvalues"][0]["energy"].get<double>() == doctest::Approx(13.0 / 6.0).epsilon(1e-14));
  CHECK(j["result"]["eigenvalues"][0]["beta"].get<double>() == doctest::Approx(1.5).epsilon(1e-13));
  CHECK(fs::exists(dir / "spectrum.csv"));
  CHECK(slurp(dir / "report.json") == out.json);
}

TEST_CASE("sumrule command on the free matrix") {
  const auto out = run(parse_config("command = sumrule\n"), {scratch("free")});
  const auto j = nlohmann::json::parse(out.json);
  CHECK(out.exit_code == exit_ok);
  CHECK(std::abs(j["result"]["residual"].get<double>()) <= 1e-10);
  CHECK(j["result"]["trace_pw"].get<double>() == 0.0);
  CHECK(j["result"]["fw_plus"].get<double>() == 0.0);
}

TEST_CASE("error codes") {
  const auto bad = run(parse_config("variant = iii\n[matrix]\nb = 1.5\n"), {scratch("hyp")});
  CHECK(bad.exit_code == exit_hypothesis);
  const auto j = nlohmann::json::parse(bad.json);
  CHECK(j["error"]["code"] == "hypothesis_violation");

  const auto grid = run(parse_config("command = measure\n[density]\nlo = -2\n"), {scratch("grid")});
  CHECK(grid.exit_code == exit_computation);
  CHECK(nlohmann::json::parse(grid.json)["error"]["code"] == "domain");
}

TEST_CASE("output is deterministic") {
  const auto c = parse_config("command = stepwise\n[matrix]\na = 0.8, 1.2\nb = 0.5, -1.7, 0.3\n");
  const auto d1 = scratch("det1"), d2 = scratch("det2");
  const auto r1 = run(c, {d1});
  const auto r2 = run(c, {d2});
  CHECK(r1.json == r2.json);
  CHECK(slurp(d1 / "stepwise.csv") == slurp(d2 / "stepwise.csv"));
  const auto rows = parse_csv(slurp(d1 / "stepwise.csv"));
  CHECK(rows.size() == 6);
  for (const auto& r : rows) CHECK(std::abs(r[5]) <= 1e-8);
  const auto stamped = run(c, {scratch("det3"), true});
  CHECK(nlohmann::json::parse(stamped.json).contains("timestamp"));
  CHECK(!nlohmann::json::parse(r1.json).contains("timestamp"));
}

TEST_CASE("density profile") {
  const auto free = parse_csv(emit_density_profile(JacobiCoefficients::free(), -1.9, 1.9, 39));
  REQUIRE(free.size() == 39);
  for (const auto& r : free) CHECK(std::abs(r[2]) <= 1e-14);
  CHECK(free.front()[0] == -1.9);
  CHECK(free.back()[0] == 1.9);

  const auto j = JacobiCoefficients::schroedinger({1.5});
  const auto spots = parse_csv(emit_density_profile(j, -1.5, 1.5, 5));
  for (const auto& r : spots) {
    CHECK(r[1] > 0.0);
    CHECK(std::abs(r[1] - oracle::stieltjes_density(j, 16000, r[0])) <= 1e-6);
  }
  CHECK_THROWS_AS(emit_density_profile(j, -2.0, 1.0, 3), Error);
  CHECK_THROWS_AS(emit_density_profile(j, -1.0, 2.0, 3), Error);
}

TEST_CASE("diagnose command on the oscillating family") {
  const auto c = parse_config(
      "command = diagnose\n[matrix]\nkind = oscillatory\nalpha2 = 1\ngamma2 = 0.5\nmu = 1\n");
  const auto dir = scratch("diag");
  const auto out = run(c, {dir});
  const auto j = nlohmann::json::parse(out.json);
  CHECK(j["result"]["verdict"] == "szego_integral_minus_infinite");
  CHECK(!j["result"]["fired"].empty());
  CHECK(fs::exists(dir / "evidence.csv"));
  CHECK(parse_csv(slurp(dir / "corroboration.csv")).size() == 5);
}
