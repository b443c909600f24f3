#include "dofalign/verifier.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

#include "dofalign/channel_sim.hpp"
#include "dofalign/coverage.hpp"
#include "dofalign/scheme_synthesis.hpp"

namespace dofalign {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start)
      .count();
}

void record(SuiteReport& report, const SystemConfig& cfg,
            const std::string& scenario, const std::string& expected,
            const std::string& observed) {
  report.failures.push_back({cfg.to_string(), scenario, expected, observed});
}

std::string vertices_string(const DofRegion& r) {
  std::string out;
  for (const auto& v : r.vertices) {
    out += "(" + rat_to_string(v.d1) + "," + rat_to_string(v.d2) + ")";
  }
  return out;
}

bool switching_shape(const SystemConfig& c) {
  return c.m1 < c.n1 && c.n1 < c.min_m2_n2();
}

}  // namespace

SuiteReport suite_region_identities(int max_antennas,
                                    const RegionMutator* mutator) {
  const auto start = Clock::now();
  SuiteReport report;
  report.suite = "regions";

  for (int m1 = 1; m1 <= max_antennas; ++m1) {
    for (int n1 = 1; n1 <= max_antennas; ++n1) {
      for (int m2 = 1; m2 <= max_antennas; ++m2) {
        for (int n2 = 1; n2 <= max_antennas; ++n2) {
          const SystemConfig cfg(m1, n1, m2, n2);
          ++report.cases;
          const int k_enough = std::max({m1, n1, m2, n2});
          const Scenario zic_full{Channel::Zic, Csit::Absent, k_enough};
          const Scenario fic_full{Channel::Fic, Csit::Absent, k_enough};
          const Scenario zic_csit{Channel::Zic, Csit::Present, {}};

          // Reducing user 2 to min(M2,N2) antennas preserves the region.
          {
            DofRegion lhs = build_region(cfg, zic_full);
            const DofRegion rhs = build_region(reduce_min_antennas(cfg),
                                               zic_full);
            if (mutator) (*mutator)(lhs, cfg);
            if (!region_equal(lhs, rhs)) {
              record(report, cfg, zic_full.to_string(),
                     "min-antenna reduction preserves region",
                     vertices_string(lhs) + " vs " + vertices_string(rhs));
            }
          }

          // Z and full interference regions agree whenever N1 <= N2.
          if (n1 <= n2) {
            const DofRegion z = build_region(cfg, zic_full);
            const DofRegion f = build_region(cfg, fic_full);
            if (!region_equal(z, f)) {
              record(report, cfg, "no-csit",
                     "ZIC and FIC regions equal for N1 <= N2",
                     vertices_string(z) + " vs " + vertices_string(f));
            }
          }

          // Losing CSIT keeps the Z region exactly when M2 <= N1 or
          // N1 >= N2 + M1; otherwise it must shrink strictly.
          {
            const DofRegion with_csit = build_region(cfg, zic_csit);
            const DofRegion without = build_region(cfg, zic_full);
            const bool expected_equal =
                (m2 <= n1) || (m2 > n1 && n1 >= n2 + m1);
            const bool equal = region_equal(with_csit, without);
            if (equal != expected_equal) {
              record(report, cfg, "csit vs no-csit",
                     expected_equal ? "regions equal" : "no-CSIT strictly smaller",
                     vertices_string(with_csit) + " vs " +
                         vertices_string(without));
            }
            if (!expected_equal &&
                !(region_subset(without, with_csit) &&
                  !region_equal(without, with_csit))) {
              record(report, cfg, "csit vs no-csit",
                     "no-CSIT region strictly inside CSIT region", "violated");
            }
          }

          // Zero-forcing allocation pairs stay inside the CSIT region.
          {
            const DofRegion with_csit = build_region(cfg, zic_csit);
            for (int d1 = 0; d1 <= std::min(m1, n1); ++d1) {
              const int d2 = zic_csit_zf_allocation(cfg, d1);
              if (!contains(with_csit, {Rat(d1), Rat(d2)})) {
                record(report, cfg, "zf allocation d1=" + std::to_string(d1),
                       "pair inside CSIT region",
                       "(" + std::to_string(d1) + "," + std::to_string(d2) +
                           ") outside");
              }
            }
          }

          if (!switching_shape(cfg)) continue;
          const long long mbar = cfg.min_m2_n2();

          // Limited-modes endpoints: K = N1 meets the full no-CSIT region,
          // K = M1 the i.i.d. isotropic one.
          {
            const DofRegion full = build_region(cfg, zic_full);
            const DofRegion at_n1 = limited_modes_region(cfg, n1);
            if (!region_equal(at_n1, full)) {
              record(report, cfg, "K=N1", "limited-modes meets full region",
                     vertices_string(at_n1) + " vs " + vertices_string(full));
            }
            const DofRegion at_m1 = limited_modes_region(cfg, m1);
            const DofRegion iid = iid_isotropic_region(cfg);
            if (!region_equal(at_m1, iid)) {
              record(report, cfg, "K=M1",
                     "limited-modes meets i.i.d. isotropic region",
                     vertices_string(at_m1) + " vs " + vertices_string(iid));
            }
            const Scenario iid_scen{Channel::Zic, Csit::Absent, m1};
            if (!region_equal(build_region(cfg, iid_scen), iid)) {
              record(report, cfg, iid_scen.to_string(),
                     "classified K=M1 region equals i.i.d. region", "differs");
            }
          }

          // Each extra mode strictly grows the region up to K = N1, and the
          // per-slot corner pair sits on the sum boundary of its region.
          for (int k = m1; k <= n1; ++k) {
            const DofRegion r_k = limited_modes_region(cfg, k);
            if (k > m1) {
              const DofRegion r_prev = limited_modes_region(cfg, k - 1);
              if (!(region_subset(r_prev, r_k) && !region_equal(r_prev, r_k))) {
                record(report, cfg, "K=" + std::to_string(k),
                       "region strictly grows with K", "growth violated");
              }
            }
            const DofPoint corner = limited_modes_corner(cfg, k);
            const HalfPlane& sum = r_k.inequalities.back();
            if (sum.a1 * corner.d1 + sum.a2 * corner.d2 != sum.b ||
                !contains(r_k, corner)) {
              record(report, cfg, "K=" + std::to_string(k),
                     "corner pair on the sum boundary", "off boundary");
            }
          }

          // The zero-forcing outer-bound point (M1, mbar(N1-M1)/N1) is a
          // vertex of the full no-CSIT region in this shape.
          {
            const DofRegion full = build_region(cfg, zic_full);
            const DofPoint p{Rat(m1), Rat(mbar * (n1 - m1), n1)};
            const auto verts = enumerate_vertices(full);
            if (std::find(verts.begin(), verts.end(), p) == verts.end()) {
              record(report, cfg, "no-csit",
                     "outer-bound point is a region vertex",
                     "(" + rat_to_string(p.d1) + "," + rat_to_string(p.d2) +
                         ") not in " + vertices_string(full));
            }
          }
        }
      }
    }
  }

  report.wall_ms = elapsed_ms(start);
  return report;
}

namespace {

struct RosterEntry {
  SystemConfig cfg;
  int k;
};

int required_passes(int trials) {
  return static_cast<int>(std::ceil(0.99 * trials));
}

}  // namespace

SuiteReport suite_scheme_structure(int trials, std::uint64_t seed) {
  const auto start = Clock::now();
  SuiteReport report;
  report.suite = "schemes";

  const std::vector<RosterEntry> roster = {
      {{1, 2, 3, 3}, 1}, {{1, 2, 3, 3}, 2}, {{2, 3, 4, 4}, 2},
      {{2, 3, 4, 4}, 3}, {{1, 3, 4, 4}, 2}, {{2, 4, 5, 5}, 2},
      {{2, 4, 5, 5}, 3}, {{2, 4, 5, 5}, 4}, {{2, 5, 6, 6}, 4},
  };

  for (std::size_t e = 0; e < roster.size(); ++e) {
    const auto& [cfg, k] = roster[e];
    ++report.cases;
    int passes = 0;
    for (int t = 0; t < trials; ++t) {
      const ChannelBlock block = draw_block(cfg, k, mix_seed(seed, e, t));
      const Scheme scheme = build_space_freq_scheme(cfg, k, block.h12);
      passes += verify_conditions(scheme, block.bank, block.h12).pass();
    }
    if (passes < required_passes(trials)) {
      record(report, cfg, "K=" + std::to_string(k),
             ">= " + std::to_string(required_passes(trials)) + "/" +
                 std::to_string(trials) + " condition passes",
             std::to_string(passes) + " passes");
    }
  }

  // Divides case: zero/one nulling with the slot-decodable beamformer and a
  // block-repeating schedule, channel blind like the full-modes design.
  {
    ++report.cases;
    const SystemConfig cfg(2, 4, 5, 5);
    const int m1 = cfg.m1, n1 = cfg.n1, m2 = cfg.min_m2_n2();
    const int beta = n1 / m1;
    const Eigen::MatrixXcd q = beta_nulling(n1, m1);
    const Eigen::MatrixXcd p =
        kronecker(Eigen::MatrixXcd::Identity(m1, m1),
                  successive_beamformer(beta));
    auto [tilde_q, tilde_p] = time_expand_pair(q, p, m2, n1);
    Scheme scheme;
    scheme.expansion = n1;
    scheme.tilde_q = std::move(tilde_q);
    scheme.tilde_p = std::move(tilde_p);
    for (Eigen::Index c = 0; c < scheme.tilde_p.cols(); ++c) {
      scheme.tilde_p.col(c).normalize();
    }
    scheme.pattern.mode_count = n1;
    for (int t = 0; t < n1; ++t) {
      std::vector<int> slot;
      for (int j = 0; j < m1; ++j) slot.push_back((t % beta) * m1 + j + 1);
      scheme.pattern.slots.push_back(std::move(slot));
    }
    scheme.streams = {m1 * n1, m2 * (n1 - m1)};
    int passes = 0;
    for (int t = 0; t < trials; ++t) {
      const ChannelBlock block =
          draw_block(cfg, n1, mix_seed(seed, 1000, t));
      passes += verify_conditions(scheme, block.bank, block.h12).pass();
    }
    if (passes < required_passes(trials)) {
      record(report, cfg, "divides-case beta=2",
             ">= " + std::to_string(required_passes(trials)) + "/" +
                 std::to_string(trials) + " condition passes",
             std::to_string(passes) + " passes");
    }
  }

  // Cyclic mixing matrix is full rank for every antenna split up to 8.
  {
    ++report.cases;
    for (int n1 = 2; n1 <= 8; ++n1) {
      for (int m1 = 1; m1 < n1; ++m1) {
        if (!r_matrix_check(n1, m1)) {
          record(report, SystemConfig(m1, n1, n1, n1),
                 "mixing matrix " + std::to_string(m1) + "/" +
                     std::to_string(n1),
                 "numerically full rank", "rank deficient");
        }
      }
    }
  }

  // Reference bank: the effective direct channel must be exactly the
  // Vandermonde matrix on the bank's roots of unity.
  {
    ++report.cases;
    for (const auto& [n1, m1] : std::vector<std::pair<int, int>>{
             {2, 1}, {3, 1}, {3, 2}, {4, 2}}) {
      const DftModeBank ref = dft_mode_bank(n1, m1);
      const auto pair = dft_nulling_pair(n1, m1);
      const auto [tilde_q, tilde_p] = time_expand_pair(pair.q, pair.p, 1, n1);
      const Eigen::MatrixXcd a =
          effective_direct_channel(ref.bank, ref.pattern, tilde_q);
      const Eigen::MatrixXcd expected = vandermonde(m1 * n1, ref.nodes);
      const double err = (a - expected).cwiseAbs().maxCoeff();
      if (err > 1e-9) {
        record(report, SystemConfig(m1, n1, n1, n1), "reference bank",
               "effective channel equals Vandermonde matrix",
               "max deviation " + std::to_string(err));
      }
    }
  }

  // Negative control: a non-switching schedule must lose rank.
  {
    ++report.cases;
    const SystemConfig cfg(1, 2, 3, 3);
    const ChannelBlock block = draw_block(cfg, 2, mix_seed(seed, 2000, 0));
    Scheme scheme = build_space_freq_scheme(cfg, 2, block.h12);
    scheme.pattern.slots = {{1}, {1}};
    const ConditionReport rep =
        verify_conditions(scheme, block.bank, block.h12);
    if (rep.direct_rank_pass) {
      record(report, cfg, "non-switching control",
             "rank condition fails", "unexpected pass");
    }
  }

  // Negative control: a channel-dependent scheme checked against a different
  // cross channel must fail nulling.
  {
    ++report.cases;
    const SystemConfig cfg(1, 3, 4, 4);
    const ChannelBlock block_a = draw_block(cfg, 2, mix_seed(seed, 3000, 0));
    const ChannelBlock block_b = draw_block(cfg, 2, mix_seed(seed, 3000, 1));
    const Scheme scheme = build_space_freq_scheme(cfg, 2, block_a.h12);
    const ConditionReport rep =
        verify_conditions(scheme, block_b.bank, block_b.h12);
    if (rep.nulling_pass) {
      record(report, cfg, "mismatched cross-channel control",
             "nulling condition fails", "unexpected pass");
    }
  }

  report.wall_ms = elapsed_ms(start);
  return report;
}

SuiteReport suite_montecarlo_slopes(std::uint64_t seed) {
  const auto start = Clock::now();
  SuiteReport report;
  report.suite = "slopes";

  struct SlopeCase {
    SystemConfig cfg;
    int k;
    double tol;
  };
  const std::vector<SlopeCase> cases = {
      {{1, 2, 3, 3}, 1, 0.1},
      {{1, 2, 3, 3}, 2, 0.1},
      {{1, 3, 4, 4}, 2, 0.15},
      {{1, 3, 4, 4}, 3, 0.15},
  };
  const std::vector<double> grid = {30.0, 40.0, 50.0};

  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto& [cfg, k, tol] = cases[i];
    ++report.cases;
    const Scenario scenario{Channel::Zic, Csit::Absent, k};
    const RateCurve curve =
        snr_sweep(cfg, scenario, grid, 200, mix_seed(seed, 4000, i));
    const SlopeEstimate est = estimate_slopes(curve, 30.0);
    const DofPoint corner = limited_modes_corner(cfg, k);
    const double want1 = rat_to_double(corner.d1);
    const double want2 = rat_to_double(corner.d2);
    if (std::abs(est.d1_hat - want1) > tol ||
        std::abs(est.d2_hat - want2) > tol) {
      std::ostringstream oss;
      oss << "(" << est.d1_hat << "," << est.d2_hat << ")";
      record(report, cfg, scenario.to_string(),
             "slopes within " + std::to_string(tol) + " of (" +
                 rat_to_string(corner.d1) + "," + rat_to_string(corner.d2) +
                 ")",
             oss.str());
    }
  }

  report.wall_ms = elapsed_ms(start);
  return report;
}

std::vector<SuiteReport> run_all_suites(int max_antennas, int trials,
                                        std::uint64_t seed) {
  coverage::reset();
  std::vector<SuiteReport> reports;
  reports.push_back(suite_region_identities(max_antennas));
  reports.push_back(suite_scheme_structure(trials, seed));
  reports.push_back(suite_montecarlo_slopes(seed));

  SuiteReport cover;
  cover.suite = "coverage";
  cover.cases = static_cast<int>(coverage::kOpCount);
  for (const auto& name : coverage::untouched()) {
    cover.failures.push_back(
        {"-", "operation coverage", std::string(name) + " touched",
         "never invoked"});
  }
  reports.push_back(std::move(cover));
  return reports;
}

nlohmann::json report_to_json(const SuiteReport& report, bool include_timing) {
  nlohmann::json j;
  j["suite"] = report.suite;
  j["cases"] = report.cases;
  j["pass"] = report.pass();
  j["failures"] = nlohmann::json::array();
  for (const auto& f : report.failures) {
    j["failures"].push_back({{"config", f.config},
                             {"scenario", f.scenario},
                             {"expected", f.expected},
                             {"observed", f.observed}});
  }
  if (include_timing) j["wall_ms"] = report.wall_ms;
  return j;
}

nlohmann::json reports_to_json(const std::vector<SuiteReport>& reports,
                               bool include_timing) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& r : reports) j.push_back(report_to_json(r, include_timing));
  return j;
}

}  // namespace dofalign
