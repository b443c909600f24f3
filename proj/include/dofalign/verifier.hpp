#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "dofalign/core.hpp"
#include "dofalign/dof_regions.hpp"

namespace dofalign {

struct SuiteFailure {
  std::string config;
  std::string scenario;
  std::string expected;
  std::string observed;
};

/// Outcome of one audit suite; empty failures means pass. Wall time is kept
/// for humans and excluded from the canonical serialized report so repeated
/// seeded runs stay byte identical.
struct SuiteReport {
  std::string suite;
  int cases = 0;
  std::vector<SuiteFailure> failures;
  double wall_ms = 0.0;

  bool pass() const { return failures.empty(); }
};

/// Test hook: corrupts a freshly built region before a comparison so the
/// harness can prove it detects broken coefficients.
using RegionMutator = std::function<void(DofRegion&, const SystemConfig&)>;

/// Exhaustive exact identities over all configs in [1..max_antennas]^4:
/// min-antenna reduction, Z/full equality for N1 <= N2, the limited-modes
/// endpoint reductions and K-monotonicity, the zero-forcing outer-bound
/// vertex, the CSIT-loss classification, and containment of every
/// zero-forcing allocation pair.
SuiteReport suite_region_identities(int max_antennas,
                                    const RegionMutator* mutator = nullptr);

/// Structural checks of the synthesized schemes on a fixed roster of
/// configurations: nulling residual and rank margins over seeded random
/// blocks, the exact-Vandermonde reference bank, the cyclic mixing-matrix
/// rank sweep, the divides-case nulling, and negative controls (a
/// non-switching pattern and a mismatched cross channel must fail).
SuiteReport suite_scheme_structure(int trials, std::uint64_t seed);

/// Monte Carlo slope estimates against the per-slot corner pairs for
/// (1,2,3,3) with K in {1,2} and (1,3,4,4) with K in {2,3}.
SuiteReport suite_montecarlo_slopes(std::uint64_t seed);

/// Runs all three suites and asserts that together they touched every
/// operation of the region, synthesis and simulation modules.
std::vector<SuiteReport> run_all_suites(int max_antennas, int trials,
                                        std::uint64_t seed);

nlohmann::json report_to_json(const SuiteReport& report,
                              bool include_timing = false);
nlohmann::json reports_to_json(const std::vector<SuiteReport>& reports,
                               bool include_timing = false);

}  // namespace dofalign
