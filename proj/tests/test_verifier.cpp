#include <doctest.h>

#include <nlohmann/json.hpp>

#include "dofalign/verifier.hpp"

using namespace dofalign;

TEST_SUITE("verifier") {

TEST_CASE("region identity suite passes exhaustively") {
  const SuiteReport r4 = suite_region_identities(4);
  CHECK(r4.pass());
  CHECK(r4.cases >= 256);

  const SuiteReport r6 = suite_region_identities(6);
  CHECK(r6.pass());
  CHECK(r6.cases == 6 * 6 * 6 * 6);
}

TEST_CASE("a corrupted coefficient is detected and attributed") {
  const RegionMutator mutator = [](DofRegion& region, const SystemConfig&) {
    region.inequalities.back().b += 1;
    region.vertices = enumerate_vertices(region);
  };
  const SuiteReport report = suite_region_identities(3, &mutator);
  CHECK_FALSE(report.pass());
  REQUIRE(!report.failures.empty());
  CHECK(!report.failures.front().config.empty());
  CHECK(!report.failures.front().observed.empty());
}

TEST_CASE("scheme structure suite passes with seeded blocks") {
  const SuiteReport report = suite_scheme_structure(20, 42);
  for (const auto& f : report.failures) {
    CAPTURE(f.config);
    CAPTURE(f.scenario);
    CAPTURE(f.observed);
    CHECK(false);
  }
  CHECK(report.pass());
  CHECK(report.cases >= 13);
}

TEST_CASE("Monte Carlo slopes match the per-slot corner pairs") {
  const SuiteReport report = suite_montecarlo_slopes(7);
  for (const auto& f : report.failures) {
    CAPTURE(f.config);
    CAPTURE(f.expected);
    CAPTURE(f.observed);
    CHECK(false);
  }
  CHECK(report.pass());
  CHECK(report.cases == 4);
}

TEST_CASE("the combined run covers every operation") {
  const auto reports = run_all_suites(3, 5, 7);
  REQUIRE(reports.size() == 4);
  const SuiteReport& coverage = reports.back();
  CHECK(coverage.suite == "coverage");
  for (const auto& f : coverage.failures) {
    CAPTURE(f.expected);
    CHECK(false);
  }
  CHECK(coverage.pass());
}

TEST_CASE("serialized reports are deterministic and omit wall time") {
  const SuiteReport a = suite_region_identities(3);
  const SuiteReport b = suite_region_identities(3);
  CHECK(report_to_json(a).dump() == report_to_json(b).dump());
  CHECK(report_to_json(a).contains("wall_ms") == false);
  CHECK(report_to_json(a, /*include_timing=*/true).contains("wall_ms"));
}

}  // TEST_SUITE
