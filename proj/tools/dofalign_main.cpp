// Command-line front end: exact DoF regions, blind interference-alignment
// scheme synthesis, Monte Carlo rate sweeps, and the bundled audit suites.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "dofalign/channel_sim.hpp"
#include "dofalign/core.hpp"
#include "dofalign/dof_regions.hpp"
#include "dofalign/scheme_synthesis.hpp"
#include "dofalign/verifier.hpp"

namespace {

using namespace dofalign;

SystemConfig parse_system(const std::string& s) {
  int v[4];
  char extra;
  if (std::sscanf(s.c_str(), "%d,%d,%d,%d%c", &v[0], &v[1], &v[2], &v[3],
                  &extra) != 4) {
    throw std::invalid_argument("--system expects M1,N1,M2,N2");
  }
  return {v[0], v[1], v[2], v[3]};
}

std::vector<double> parse_snr_grid(const std::string& s) {
  double a = 0.0, step = 0.0, b = 0.0;
  char extra;
  if (std::sscanf(s.c_str(), "%lf:%lf:%lf%c", &a, &step, &b, &extra) != 3 ||
      step <= 0.0 || b < a) {
    throw std::invalid_argument("--snr-db expects A:STEP:B with STEP > 0");
  }
  std::vector<double> grid;
  for (double v = a; v <= b + 1e-9; v += step) grid.push_back(v);
  return grid;
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file " + path);
  out << content;
}

std::string approx(const Rat& r) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", rat_to_double(r));
  return buf;
}

void print_region_table(const SystemConfig& cfg, const Scenario& scenario,
                        const CaseLabel& label, const DofRegion& region) {
  std::cout << "system " << cfg.to_string() << "  (" << scenario.to_string()
            << ")\n";
  std::cout << "case: " << to_string(label.result)
            << "  reconfigurable: " << to_string(label.side) << "\n";
  std::cout << "inequalities:\n";
  for (const auto& h : region.inequalities) {
    std::string lhs;
    if (h.a1 != 0) {
      lhs += (h.a1 == 1 ? "d1" : rat_to_string(h.a1) + " d1");
    }
    if (h.a2 != 0) {
      if (!lhs.empty()) lhs += " + ";
      lhs += (h.a2 == 1 ? "d2" : rat_to_string(h.a2) + " d2");
    }
    std::cout << "  " << lhs << " <= " << rat_to_string(h.b);
    if (h.b.denominator() != 1 || h.a1.denominator() != 1 ||
        h.a2.denominator() != 1) {
      std::cout << "    (<= " << approx(h.b) << ")";
    }
    std::cout << "\n";
  }
  std::cout << "vertices:\n";
  for (const auto& v : region.vertices) {
    std::cout << "  (" << rat_to_string(v.d1) << ", " << rat_to_string(v.d2)
              << ")";
    if (v.d1.denominator() != 1 || v.d2.denominator() != 1) {
      std::cout << "    (" << approx(v.d1) << ", " << approx(v.d2) << ")";
    }
    std::cout << "\n";
  }
}

int run(int argc, char** argv) {
  CLI::App app{
      "Exact DoF regions, blind interference-alignment scheme synthesis, and "
      "Monte Carlo rate simulation for two-user MIMO Z/full interference "
      "channels"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads,
                 "worker threads for simulation (default: all cores)")
      ->envname("DOF_ALIGN_THREADS");

  // region
  auto* region_cmd =
      app.add_subcommand("region", "print a DoF region (exact rationals)");
  std::string system_str, channel_str = "zic", csit_str, format_str = "table";
  std::optional<int> modes;
  region_cmd->add_option("--system", system_str, "antenna counts M1,N1,M2,N2")
      ->required();
  region_cmd->add_option("--channel", channel_str, "zic|fic")
      ->check(CLI::IsMember({"zic", "fic"}))
      ->required();
  region_cmd->add_option("--csit", csit_str, "yes|no")
      ->check(CLI::IsMember({"yes", "no"}))
      ->required();
  region_cmd->add_option("--modes", modes, "antenna mode count K");
  region_cmd->add_option("--format", format_str, "json|table")
      ->check(CLI::IsMember({"json", "table"}));

  // synthesize
  auto* synth_cmd = app.add_subcommand(
      "synthesize", "emit a beamforming/nulling scheme as JSON");
  std::string synth_system, synth_out;
  int synth_modes = 0;
  std::uint64_t synth_seed = 0;
  synth_cmd->add_option("--system", synth_system, "antenna counts M1,N1,M2,N2")
      ->required();
  synth_cmd->add_option("--modes", synth_modes, "antenna mode count K")
      ->required();
  synth_cmd->add_option("--seed", synth_seed,
                        "block-channel seed for the channel-dependent case");
  synth_cmd->add_option("--out", synth_out, "output file (default: stdout)");

  // simulate
  auto* sim_cmd = app.add_subcommand(
      "simulate", "Monte Carlo SNR sweep with slope estimates");
  std::string sim_system, sim_grid = "0:10:50", sim_out;
  int sim_modes = 0, sim_trials = 200;
  std::uint64_t sim_seed = 0;
  sim_cmd->add_option("--system", sim_system, "antenna counts M1,N1,M2,N2")
      ->required();
  sim_cmd->add_option("--modes", sim_modes, "antenna mode count K")
      ->required();
  sim_cmd->add_option("--snr-db", sim_grid, "inclusive dB grid A:STEP:B");
  sim_cmd->add_option("--trials", sim_trials, "blocks per SNR point");
  sim_cmd->add_option("--seed", sim_seed, "Monte Carlo seed");
  sim_cmd->add_option("--out", sim_out, "CSV output file (default: stdout)");

  // verify
  auto* verify_cmd =
      app.add_subcommand("verify", "run the bundled audit suites");
  std::string suite = "all";
  int max_antennas = 6;
  std::uint64_t verify_seed = 0;
  bool timings = false;
  verify_cmd->add_option("--suite", suite, "regions|schemes|slopes|all")
      ->check(CLI::IsMember({"regions", "schemes", "slopes", "all"}));
  verify_cmd->add_option("--max-antennas", max_antennas,
                         "grid bound for the region suite");
  verify_cmd->add_option("--seed", verify_seed, "suite seed");
  verify_cmd->add_flag("--timings", timings,
                       "include wall times in the JSON report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  if (threads > 0) {
    setenv("DOF_ALIGN_THREADS", std::to_string(threads).c_str(), 1);
  }

  if (*region_cmd) {
    const SystemConfig cfg = parse_system(system_str);
    const Scenario scenario{
        channel_str == "zic" ? Channel::Zic : Channel::Fic,
        csit_str == "yes" ? Csit::Present : Csit::Absent, modes};
    const CaseLabel label = classify(cfg, scenario);
    const DofRegion region = build_region(cfg, scenario);
    if (format_str == "json") {
      std::cout << region_to_json(region).dump(2) << "\n";
    } else {
      print_region_table(cfg, scenario, label, region);
    }
    return 0;
  }

  if (*synth_cmd) {
    const SystemConfig cfg = parse_system(synth_system);
    const Scenario scenario{Channel::Zic, Csit::Absent, synth_modes};
    const CaseLabel label = classify(cfg, scenario);
    if (label.side != ReconfigurableSide::Tx1) {
      throw std::invalid_argument(
          "scheme synthesis needs the shape M1 < N1 < min(M2,N2); case is " +
          to_string(label.result));
    }
    const SystemConfig reduced = reduce_min_antennas(cfg);
    const int k = std::min(synth_modes, reduced.n1);
    Scheme scheme;
    if (k == reduced.n1) {
      scheme = build_space_freq_scheme(
          reduced, k, Eigen::MatrixXcd::Zero(reduced.n1, reduced.m2));
    } else {
      const ChannelBlock block = draw_block(reduced, synth_modes, synth_seed);
      scheme = build_space_freq_scheme(reduced, k, block.h12);
    }
    write_output(synth_out, scheme_to_json(scheme).dump(2) + "\n");
    return 0;
  }

  if (*sim_cmd) {
    const SystemConfig cfg = parse_system(sim_system);
    const Scenario scenario{Channel::Zic, Csit::Absent, sim_modes};
    const std::vector<double> grid = parse_snr_grid(sim_grid);
    const RateCurve curve =
        snr_sweep(cfg, scenario, grid, sim_trials, sim_seed, threads);
    write_output(sim_out, rate_curve_csv(curve));
    // Slope window: at least two points, preferring the >= 30 dB tail.
    double cutoff = 30.0;
    if (grid.size() >= 2 && grid[grid.size() - 2] < cutoff) {
      cutoff = grid[grid.size() - 2];
    }
    const SlopeEstimate est = estimate_slopes(curve, cutoff);
    std::ostream& slopes_out = sim_out.empty() ? std::cerr : std::cout;
    char line[256];
    std::snprintf(line, sizeof(line),
                  "slopes over %d points >= %.6g dB: d1_hat=%.6g "
                  "(stderr %.3g), d2_hat=%.6g (stderr %.3g)\n",
                  est.window, cutoff, est.d1_hat, est.stderr1, est.d2_hat,
                  est.stderr2);
    slopes_out << line;
    return 0;
  }

  if (*verify_cmd) {
    std::vector<SuiteReport> reports;
    if (suite == "regions") {
      reports.push_back(suite_region_identities(max_antennas));
    } else if (suite == "schemes") {
      reports.push_back(suite_scheme_structure(100, verify_seed));
    } else if (suite == "slopes") {
      reports.push_back(suite_montecarlo_slopes(verify_seed));
    } else {
      reports = run_all_suites(max_antennas, 100, verify_seed);
    }
    std::cout << reports_to_json(reports, timings).dump(2) << "\n";
    bool all_pass = true;
    for (const auto& r : reports) {
      std::cerr << "suite " << r.suite << ": "
                << (r.pass() ? "pass" : "FAIL") << " (" << r.cases
                << " cases, " << r.failures.size() << " failures, "
                << r.wall_ms << " ms)\n";
      all_pass = all_pass && r.pass();
    }
    return all_pass ? 0 : 1;
  }

  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
