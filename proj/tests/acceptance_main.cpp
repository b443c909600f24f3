// Acceptance suite: runs each release criterion at its stated tolerance and
// prints one pass/fail line per criterion. Exits nonzero on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dofalign/channel_sim.hpp"
#include "dofalign/core.hpp"
#include "dofalign/dof_regions.hpp"
#include "dofalign/scheme_synthesis.hpp"
#include "dofalign/verifier.hpp"

namespace {

using namespace dofalign;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
  double seconds = 0.0;
};

std::vector<DofPoint> pts(std::initializer_list<std::pair<Rat, Rat>> list) {
  std::vector<DofPoint> out;
  for (const auto& [a, b] : list) out.push_back({a, b});
  return out;
}

// 1. Exact vertex sets of the three (1,2,3,3) reference regions.
Outcome criterion_region_exactness() {
  Outcome out;
  const SystemConfig cfg(1, 2, 3, 3);
  struct Case {
    Scenario scenario;
    std::vector<DofPoint> expected;
    const char* name;
  };
  const std::vector<Case> cases = {
      {{Channel::Zic, Csit::Present, {}},
       pts({{0, 0}, {1, 0}, {1, 2}, {0, 3}}),
       "csit"},
      {{Channel::Zic, Csit::Absent, 2},
       pts({{0, 0}, {1, 0}, {1, Rat(3, 2)}, {0, 3}}),
       "no-csit K=2"},
      {{Channel::Zic, Csit::Absent, 1},
       pts({{0, 0}, {1, 0}, {1, 1}, {0, 3}}),
       "no-csit K=1"},
  };
  for (const auto& c : cases) {
    const DofRegion r = build_region(cfg, c.scenario);
    if (r.vertices != c.expected) {
      out.pass = false;
      out.detail += std::string(" [") + c.name + " vertex mismatch]";
    }
  }
  if (out.pass) out.detail = "three exact vertex sets matched";
  return out;
}

// 2. Limited-modes endpoint and growth identities over [1..6]^4.
Outcome criterion_reduction_identities() {
  Outcome out;
  int shapes = 0;
  for (int m1 = 1; m1 <= 6; ++m1) {
    for (int n1 = 1; n1 <= 6; ++n1) {
      for (int m2 = 1; m2 <= 6; ++m2) {
        for (int n2 = 1; n2 <= 6; ++n2) {
          const SystemConfig cfg(m1, n1, m2, n2);
          if (!(m1 < n1 && n1 < cfg.min_m2_n2())) continue;
          ++shapes;
          const Scenario full{Channel::Zic, Csit::Absent, n1};
          if (!region_equal(limited_modes_region(cfg, n1),
                            build_region(cfg, full))) {
            out.pass = false;
            out.detail += " [K=N1 endpoint " + cfg.to_string() + "]";
          }
          if (!region_equal(limited_modes_region(cfg, m1),
                            iid_isotropic_region(cfg))) {
            out.pass = false;
            out.detail += " [K=M1 endpoint " + cfg.to_string() + "]";
          }
          for (int k = m1 + 1; k <= n1; ++k) {
            const DofRegion prev = limited_modes_region(cfg, k - 1);
            const DofRegion cur = limited_modes_region(cfg, k);
            if (!(region_subset(prev, cur) && !region_equal(prev, cur))) {
              out.pass = false;
              out.detail += " [growth " + cfg.to_string() + " K=" +
                            std::to_string(k) + "]";
            }
          }
          const DofPoint zf_point{
              Rat(m1), Rat(static_cast<long long>(cfg.min_m2_n2()) * (n1 - m1),
                           n1)};
          const DofRegion full_region = build_region(cfg, full);
          const auto& v = full_region.vertices;
          if (std::find(v.begin(), v.end(), zf_point) == v.end()) {
            out.pass = false;
            out.detail += " [outer-bound vertex " + cfg.to_string() + "]";
          }
        }
      }
    }
  }
  if (out.pass) {
    out.detail =
        "endpoints, strict growth and the outer-bound vertex hold on " +
        std::to_string(shapes) + " switching shapes";
  }
  return out;
}

// 3. Structural identities over the full [1..6]^4 grid.
Outcome criterion_structural_lemmas() {
  Outcome out;
  int checked = 0;
  for (int m1 = 1; m1 <= 6; ++m1) {
    for (int n1 = 1; n1 <= 6; ++n1) {
      for (int m2 = 1; m2 <= 6; ++m2) {
        for (int n2 = 1; n2 <= 6; ++n2) {
          const SystemConfig cfg(m1, n1, m2, n2);
          ++checked;
          const int k = std::max({m1, n1, m2, n2});
          const Scenario zic{Channel::Zic, Csit::Absent, k};
          const Scenario fic{Channel::Fic, Csit::Absent, k};
          if (!region_equal(build_region(cfg, zic),
                            build_region(reduce_min_antennas(cfg), zic))) {
            out.pass = false;
            out.detail += " [min-antenna " + cfg.to_string() + "]";
          }
          if (n1 <= n2 && !region_equal(build_region(cfg, zic),
                                        build_region(cfg, fic))) {
            out.pass = false;
            out.detail += " [zic=fic " + cfg.to_string() + "]";
          }
          const bool equal = region_equal(
              build_region(cfg, {Channel::Zic, Csit::Present, {}}),
              build_region(cfg, zic));
          const bool expected = (m2 <= n1) || (m2 > n1 && n1 >= n2 + m1);
          if (equal != expected) {
            out.pass = false;
            out.detail += " [csit-loss " + cfg.to_string() + "]";
          }
        }
      }
    }
  }
  if (out.pass) {
    out.detail = "lemma identities hold on all " + std::to_string(checked) +
                 " configurations";
  }
  return out;
}

// 4. Scheme structure at the documented thresholds.
Outcome criterion_scheme_structure() {
  Outcome out;
  const SuiteReport report = suite_scheme_structure(100, 7);
  out.pass = report.pass();
  if (!out.pass) {
    for (const auto& f : report.failures) {
      out.detail += " [" + f.config + " " + f.scenario + ": " + f.observed +
                    "]";
    }
  } else {
    out.detail = "roster, reference bank, mixing-matrix sweep and negative "
                 "controls all within thresholds";
  }
  return out;
}

// 5. Monte Carlo slopes at the stated tolerances.
Outcome criterion_slopes() {
  Outcome out;
  struct Case {
    SystemConfig cfg;
    int k;
    double tol;
  };
  const std::vector<Case> cases = {
      {{1, 2, 3, 3}, 2, 0.1},
      {{1, 2, 3, 3}, 1, 0.1},
      {{1, 3, 4, 4}, 2, 0.15},
      {{1, 3, 4, 4}, 3, 0.15},
  };
  std::ostringstream detail;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto& [cfg, k, tol] = cases[i];
    const RateCurve curve =
        snr_sweep(cfg, {Channel::Zic, Csit::Absent, k}, {30.0, 40.0, 50.0},
                  200, mix_seed(7, 4000, i));
    const SlopeEstimate est = estimate_slopes(curve, 30.0);
    const DofPoint corner = limited_modes_corner(cfg, k);
    const double want1 = rat_to_double(corner.d1);
    const double want2 = rat_to_double(corner.d2);
    const bool ok = std::abs(est.d1_hat - want1) <= tol &&
                    std::abs(est.d2_hat - want2) <= tol;
    char buf[160];
    std::snprintf(buf, sizeof(buf), " [%s K=%d: (%.3f,%.3f) vs (%.3f,%.3f)%s]",
                  cfg.to_string().c_str(), k, est.d1_hat, est.d2_hat, want1,
                  want2, ok ? "" : " OUT OF TOLERANCE");
    detail << buf;
    out.pass = out.pass && ok;
  }
  out.detail = detail.str();
  return out;
}

// 6. Byte-identical repeated verification runs.
Outcome criterion_reproducibility(const std::string& cli_path) {
  Outcome out;
  if (!cli_path.empty()) {
    const auto capture = [&](std::string& dst) {
      const std::string cmd = cli_path + " verify --suite all --seed 7 2>/dev/null";
      FILE* pipe = popen(cmd.c_str(), "r");
      if (!pipe) return false;
      char buf[4096];
      std::size_t n;
      while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) dst.append(buf, n);
      const int status = pclose(pipe);
      return status == 0;
    };
    std::string first, second;
    const bool ok1 = capture(first);
    const bool ok2 = capture(second);
    if (!ok1 || !ok2) {
      out.pass = false;
      out.detail = "verification run did not exit cleanly";
      return out;
    }
    out.pass = !first.empty() && first == second;
    out.detail = out.pass ? "two seeded CLI runs emitted identical bytes (" +
                                std::to_string(first.size()) + " bytes)"
                          : "CLI outputs differ between runs";
    return out;
  }
  const std::string a = reports_to_json(run_all_suites(6, 100, 7)).dump(2);
  const std::string b = reports_to_json(run_all_suites(6, 100, 7)).dump(2);
  out.pass = a == b;
  out.detail = out.pass ? "two in-process runs serialized identically"
                        : "serialized reports differ";
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli_path;
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--cli") cli_path = argv[i + 1];
  }

  std::vector<std::pair<std::string, Outcome>> results;
  const auto timed = [](auto&& fn) {
    const auto start = Clock::now();
    Outcome out = fn();
    out.seconds =
        std::chrono::duration<double>(Clock::now() - start).count();
    return out;
  };

  const auto with_budget = [](Outcome out, double budget) {
    if (out.seconds > budget) {
      out.pass = false;
      out.detail += " [exceeded " + std::to_string(budget) + " s budget]";
    }
    return out;
  };

  results.emplace_back(
      "1 region exactness",
      with_budget(timed(criterion_region_exactness), 1.0));
  results.emplace_back(
      "2 reduction identities",
      with_budget(timed(criterion_reduction_identities), 10.0));
  results.emplace_back(
      "3 structural lemmas",
      with_budget(timed(criterion_structural_lemmas), 10.0));
  results.emplace_back(
      "4 scheme structure",
      with_budget(timed(criterion_scheme_structure), 30.0));
  results.emplace_back("5 dof slopes", timed(criterion_slopes));
  results.emplace_back("6 reproducibility",
                       timed([&] { return criterion_reproducibility(cli_path); }));

  bool all_pass = true;
  for (const auto& [name, outcome] : results) {
    std::printf("%s criterion %s (%.2f s):%s%s\n",
                outcome.pass ? "PASS" : "FAIL", name.c_str(), outcome.seconds,
                outcome.detail.empty() || outcome.detail.front() == ' ' ? ""
                                                                        : " ",
                outcome.detail.c_str());
    all_pass = all_pass && outcome.pass;
  }
  return all_pass ? 0 : 1;
}
