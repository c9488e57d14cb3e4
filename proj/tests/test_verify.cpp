#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "doctest.h"
#include "nonsym/artifact_io.hpp"
#include "nonsym/construction.hpp"
#include "nonsym/verify.hpp"

using namespace nonsym;

namespace {

// One canonical build per process; every case audits the same object.
const Counterexample& canonical() {
  static const Counterexample ce =
      build(ProblemParams::make(0.5, 1.0, 2.0, 1), Modulus::power(1.0, 0.1));
  return ce;
}

std::vector<FieldSample> grid_samples(const Counterexample& ce) {
  std::vector<FieldSample> out;
  for (double x : ce.config().grid.make(ce.solution())) {
    out.push_back({x, ce.coef_a(x), ce.coef_c(x)});
  }
  return out;
}

std::vector<FieldSample> drift_samples(const Counterexample& ce) {
  std::vector<FieldSample> out;
  for (double x : drift_audit_points(ce.delta())) {
    out.push_back({x, ce.coef_a(x), 0.0});
  }
  return out;
}

std::filesystem::path temp_file(const char* name) {
  return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("drift audit points cover fourteen dyads in pairs") {
  const double delta = std::exp2(-23);
  const auto xs = drift_audit_points(delta);
  REQUIRE_EQ(xs.size(), 2 * 14 * 4);
  CHECK_EQ(xs[0], delta);
  CHECK_EQ(xs[1], -delta);
  for (std::size_t i = 0; i < xs.size(); i += 2) {
    CHECK_EQ(xs[i + 1], -xs[i]);
    CHECK(xs[i] > 0.0);
    CHECK(xs[i] <= delta);
  }
}

TEST_CASE("canonical build passes the full audit") {
  const Counterexample& ce = canonical();
  const VerifyReport report = verify_counterexample(ce);

  CHECK(report.all_pass());
  REQUIRE_EQ(report.checks.size(), 8);

  const CheckResult* normalized = report.find("normalized");
  REQUIRE(normalized != nullptr);
  CHECK_EQ(normalized->measured, 1.0);

  const CheckResult* admissible = report.find("admissible");
  REQUIRE(admissible != nullptr);
  CHECK(admissible->measured < 0.95);
  CHECK_EQ(admissible->threshold, 1.0 - 1e-3);

  const CheckResult* kernel = report.find("kernel_pinched");
  REQUIRE(kernel != nullptr);
  CHECK(kernel->measured > 0.05);

  const CheckResult* residual = report.find("residual");
  REQUIRE(residual != nullptr);
  CHECK_EQ(residual->threshold,
           1e-3 * (ce.bound() + 1.0) / ce.sup_raw());
  CHECK(residual->measured < 1e-8);

  const CheckResult* gap = report.find("gap");
  REQUIRE(gap != nullptr);
  CHECK_EQ(gap->measured, ce.gap());
  CHECK_EQ(gap->threshold, ce.eta_at_2r());

  const CheckResult* det = report.find("deterministic");
  REQUIRE(det != nullptr);
  CHECK_EQ(det->measured, 0.0);

  CHECK(report.find("extremal")->pass);
  CHECK(report.find("reproducible")->pass);
  CHECK_EQ(report.find("no_such_check"), nullptr);
}

TEST_CASE("report formatting lists one line per check") {
  const VerifyReport report = verify_counterexample(canonical());
  std::ostringstream os;
  os << report;
  const std::string text = os.str();
  std::size_t lines = 0;
  for (char ch : text) lines += ch == '\n';
  CHECK_EQ(lines, report.checks.size());
  CHECK(text.find("PASS  residual") != std::string::npos);
  CHECK(text.find("FAIL") == std::string::npos);
}

TEST_CASE("corrupting a closing coefficient is caught") {
  const Counterexample& ce = canonical();
  auto grid = grid_samples(ce);
  auto drift = drift_samples(ce);
  grid[5].c += 0.2;
  const VerifyReport report = verify_tables(ce, grid, drift);
  CHECK_FALSE(report.all_pass());
  CHECK_FALSE(report.find("residual")->pass);
  CHECK_FALSE(report.find("reproducible")->pass);
  // the damage is local: the other checks still hold
  CHECK(report.find("normalized")->pass);
  CHECK(report.find("gap")->pass);
}

TEST_CASE("corrupting a drift coefficient is caught") {
  const Counterexample& ce = canonical();
  auto grid = grid_samples(ce);
  auto drift = drift_samples(ce);
  drift[3].a -= 0.3;
  const VerifyReport report = verify_tables(ce, grid, drift);
  CHECK_FALSE(report.all_pass());
  CHECK_FALSE(report.find("reproducible")->pass);
}

TEST_CASE("inadmissible coefficients are caught") {
  const Counterexample& ce = canonical();
  auto grid = grid_samples(ce);
  auto drift = drift_samples(ce);
  grid[2].c = 0.9999;
  const VerifyReport report = verify_tables(ce, grid, drift);
  CHECK_FALSE(report.find("admissible")->pass);
}

TEST_CASE("an empty grid is rejected") {
  CHECK_THROWS_AS(verify_tables(canonical(), {}, {}),
                  std::invalid_argument);
}

TEST_CASE("modulus specs parse and evaluate") {
  const ModulusSpec power = ModulusSpec::parse("power:1:0.1");
  CHECK_EQ(power.kind, "power");
  CHECK_EQ(power.M, 1.0);
  CHECK_EQ(power.gamma, 0.1);
  CHECK_EQ(power.make()(0.01), Modulus::power(1.0, 0.1)(0.01));

  const ModulusSpec log = ModulusSpec::parse("log:2.5");
  CHECK_EQ(log.M, 2.5);
  CHECK_EQ(log.make()(0.01), Modulus::log_decay(2.5)(0.01));

  CHECK_THROWS_AS(ModulusSpec::parse("power:1"), std::invalid_argument);
  CHECK_THROWS_AS(ModulusSpec::parse("power:1:x"), std::invalid_argument);
  CHECK_THROWS_AS(ModulusSpec::parse("power:1:0.1:9"),
                  std::invalid_argument);
  CHECK_THROWS_AS(ModulusSpec::parse("log:"), std::invalid_argument);
  CHECK_THROWS_AS(ModulusSpec::parse("log:-2"), std::invalid_argument);
  CHECK_THROWS_AS(ModulusSpec::parse("spline:1"), std::invalid_argument);
  CHECK_THROWS_AS(ModulusSpec::parse("table:"), std::invalid_argument);
  CHECK_THROWS_AS(ModulusSpec::parse("table:/no/such/file.csv"),
                  std::runtime_error);
}

TEST_CASE("modulus table files load with comments") {
  const auto path = temp_file("nonsym_modulus_test.csv");
  {
    std::ofstream os(path);
    os << "# modulus samples\n";
    os << "0.25, 0.5\n";
    os << "\n";
    os << "1.0, 1.0  # clamp beyond here\n";
  }
  const ModulusSpec spec =
      ModulusSpec::parse("table:" + path.string());
  REQUIRE_EQ(spec.points.size(), 2);
  CHECK_EQ(spec.points[0].first, 0.25);
  CHECK_EQ(spec.points[0].second, 0.5);
  CHECK_EQ(spec.make()(2.0), 1.0);
  std::filesystem::remove(path);

  {
    std::ofstream os(path);
    os << "0.25 0.5\n";  // missing comma
  }
  CHECK_THROWS_AS(ModulusSpec::parse("table:" + path.string()),
                  std::invalid_argument);
  std::filesystem::remove(path);
}

TEST_CASE("artifact round trip preserves the construction") {
  const Counterexample& ce = canonical();
  const ModulusSpec spec = ModulusSpec::parse("power:1:0.1");
  const auto path = temp_file("nonsym_artifact_test.json");
  save_artifact(path.string(), ce, spec);

  const Artifact art = load_artifact(path.string());
  CHECK_EQ(art.params.alpha, 0.5);
  CHECK_EQ(art.params.dim, 1);
  CHECK_EQ(art.eta.kind, "power");
  CHECK_EQ(art.eta.gamma, 0.1);
  CHECK_EQ(art.r, ce.r());
  CHECK_EQ(art.delta, ce.delta());
  CHECK_EQ(art.ramp_K, ce.ramp_K());
  CHECK_EQ(art.ramp_scale, ce.ramp_scale());
  CHECK_EQ(art.bound, ce.bound());
  CHECK_EQ(art.sup_raw, ce.sup_raw());
  CHECK_EQ(art.rounds, ce.rounds());
  REQUIRE_EQ(art.grid.size(), 32);
  REQUIRE_EQ(art.drift.size(), drift_audit_points(ce.delta()).size());
  CHECK_EQ(art.grid[7].c, ce.coef_c(art.grid[7].x));
  CHECK_EQ(art.drift[0].a, ce.coef_a(art.drift[0].x));

  // the reconstruction carries the same profiles and passes the audit
  // against the stored tables
  const Counterexample back = art.reconstruct();
  CHECK_EQ(back.sup_raw(), ce.sup_raw());
  CHECK_EQ(back.gap(), ce.gap());
  CHECK_EQ(back.solution()(0.3), ce.solution()(0.3));
  const VerifyReport report = verify_tables(back, art.grid, art.drift);
  CHECK(report.all_pass());

  std::filesystem::remove(path);
}

TEST_CASE("artifact loading rejects damaged files") {
  CHECK_THROWS_AS(load_artifact("/no/such/artifact.json"),
                  std::runtime_error);

  const auto path = temp_file("nonsym_artifact_bad.json");
  {
    std::ofstream os(path);
    os << "{ not json";
  }
  CHECK_THROWS_AS(load_artifact(path.string()), std::runtime_error);

  {
    std::ofstream os(path);
    os << "{\"format\": \"something-else/9\"}";
  }
  CHECK_THROWS_AS(load_artifact(path.string()), std::runtime_error);

  {
    std::ofstream os(path);
    os << "{\"format\": \"nonsym-counterexample/1\"}";
  }
  CHECK_THROWS_AS(load_artifact(path.string()), std::runtime_error);
  std::filesystem::remove(path);
}
