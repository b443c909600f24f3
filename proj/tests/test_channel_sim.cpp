#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "dofalign/channel_sim.hpp"

using namespace dofalign;
using Eigen::MatrixXcd;

namespace {

const Scenario kTwoModes{Channel::Zic, Csit::Absent, 2};

double matrix_diff(const MatrixXcd& a, const MatrixXcd& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_SUITE("channel_sim") {

TEST_CASE("block draws are deterministic and correctly shaped") {
  const SystemConfig cfg(1, 2, 3, 3);
  const ChannelBlock a = draw_block(cfg, 2, 42);
  const ChannelBlock b = draw_block(cfg, 2, 42);
  CHECK(matrix_diff(a.bank, b.bank) == 0.0);
  CHECK(matrix_diff(a.h12, b.h12) == 0.0);
  CHECK(matrix_diff(a.h22, b.h22) == 0.0);
  CHECK_FALSE(a.h21.has_value());

  CHECK(a.bank.rows() == 2);
  CHECK(a.bank.cols() == 2);
  CHECK(a.h12.rows() == 2);
  CHECK(a.h12.cols() == 3);
  CHECK(a.h22.rows() == 3);
  CHECK(a.h22.cols() == 3);

  const ChannelBlock c = draw_block(cfg, 2, 43);
  CHECK(matrix_diff(a.bank, c.bank) > 0.0);

  const ChannelBlock fic = draw_block(cfg, 2, 42, Channel::Fic);
  REQUIRE(fic.h21.has_value());
  CHECK(fic.h21->rows() == 3);
  CHECK(fic.h21->cols() == 1);

  CHECK_THROWS_AS(draw_block(SystemConfig(2, 3, 4, 4), 1, 0),
                  std::invalid_argument);
}

TEST_CASE("draws have unit per-entry variance") {
  double sum_sq = 0.0;
  std::size_t count = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const ChannelBlock block = draw_block({4, 4, 5, 5}, 4, 7000 + trial);
    sum_sq += block.bank.cwiseAbs2().sum() + block.h12.cwiseAbs2().sum() +
              block.h22.cwiseAbs2().sum();
    count += block.bank.size() + block.h12.size() + block.h22.size();
  }
  REQUIRE(count >= 10000);
  const double variance = sum_sq / static_cast<double>(count);
  CHECK(variance > 0.97);
  CHECK(variance < 1.03);
}

TEST_CASE("rates vanish with the transmit power") {
  const SystemConfig cfg(1, 2, 3, 3);
  const ChannelBlock block = draw_block(cfg, 2, 1);
  const Scheme scheme = build_space_freq_scheme(cfg, 2, block.h12);
  const auto [r1, r2] = block_rates(block, scheme, 1e-12);
  CHECK(r1 < 1e-9);
  CHECK(r2 < 1e-9);
  CHECK(r1 >= 0.0);
  CHECK(r2 >= 0.0);
  CHECK_THROWS_AS(block_rates(block, scheme, 0.0), std::invalid_argument);
}

TEST_CASE("a power decade adds the per-user slope in bits") {
  const SystemConfig cfg(1, 2, 3, 3);
  double diff1 = 0.0, diff2 = 0.0;
  const int blocks = 200;
  for (int trial = 0; trial < blocks; ++trial) {
    const ChannelBlock block = draw_block(cfg, 2, 20000 + trial);
    const Scheme scheme = build_space_freq_scheme(cfg, 2, block.h12);
    const auto [lo1, lo2] = block_rates(block, scheme, 1e4);
    const auto [hi1, hi2] = block_rates(block, scheme, 1e5);
    diff1 += hi1 - lo1;
    diff2 += hi2 - lo2;
  }
  diff1 /= blocks;
  diff2 /= blocks;
  const double decade = std::log2(10.0);
  CHECK(std::abs(diff1 - decade) < 0.3);        // d1 = 1
  CHECK(std::abs(diff2 - 1.5 * decade) < 0.4);  // d2 = 3/2
}

TEST_CASE("rate computation rejects mismatched shapes") {
  const SystemConfig cfg(1, 2, 3, 3);
  const ChannelBlock block = draw_block(cfg, 2, 5);
  const SystemConfig other(1, 3, 4, 4);
  const ChannelBlock wrong = draw_block(other, 2, 5);
  const Scheme scheme = build_space_freq_scheme(other, 2, wrong.h12);
  CHECK_THROWS_AS(block_rates(block, scheme, 10.0), std::invalid_argument);
}

TEST_CASE("sweeps are reproducible and schedule independent") {
  const SystemConfig cfg(1, 2, 3, 3);
  const std::vector<double> grid = {10.0, 20.0};
  const RateCurve a = snr_sweep(cfg, kTwoModes, grid, 5, 9, /*threads=*/1);
  const RateCurve b = snr_sweep(cfg, kTwoModes, grid, 5, 9, /*threads=*/4);
  REQUIRE(a.r1.size() == b.r1.size());
  for (std::size_t i = 0; i < a.r1.size(); ++i) {
    CHECK(a.r1[i] == b.r1[i]);
    CHECK(a.r2[i] == b.r2[i]);
  }
  CHECK(a.trials == 5);
  CHECK(a.seed == 9);

  const RateCurve c = snr_sweep(cfg, kTwoModes, grid, 5, 10);
  CHECK(a.r1[0] != c.r1[0]);
}

TEST_CASE("average rates grow with SNR") {
  const SystemConfig cfg(1, 2, 3, 3);
  const std::vector<double> grid = {0.0, 10.0, 20.0, 30.0};
  const RateCurve curve = snr_sweep(cfg, kTwoModes, grid, 200, 11);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    CHECK(curve.r1[i] > curve.r1[i - 1]);
    CHECK(curve.r2[i] > curve.r2[i - 1]);
  }
}

TEST_CASE("doubling the trials roughly halves the estimator variance") {
  const SystemConfig cfg(1, 2, 3, 3);
  const std::vector<double> grid = {30.0};
  const auto variance_at = [&](int trials) {
    double mean = 0.0, sq = 0.0;
    const int reps = 48;
    for (int rep = 0; rep < reps; ++rep) {
      const RateCurve c =
          snr_sweep(cfg, kTwoModes, grid, trials, 31000 + rep);
      mean += c.r1[0];
      sq += c.r1[0] * c.r1[0];
    }
    mean /= reps;
    return sq / reps - mean * mean;
  };
  const double ratio = variance_at(50) / variance_at(100);
  CHECK(ratio > 2.0 / 1.5);
  CHECK(ratio < 2.0 * 1.5);
}

TEST_CASE("simulation is defined exactly for the reconfigurable cases") {
  CHECK_THROWS_AS(snr_sweep({2, 2, 2, 2}, kTwoModes, {10.0, 20.0}, 1, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(snr_sweep({1, 2, 3, 3}, {Channel::Zic, Csit::Present, {}},
                            {10.0, 20.0}, 1, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      snr_sweep({1, 2, 3, 3}, kTwoModes, {20.0, 10.0}, 1, 0),
      std::invalid_argument);
  // Tx2-side full interference rides on the swapped system.
  const RateCurve swapped = snr_sweep({3, 3, 1, 2},
                                      {Channel::Fic, Csit::Absent, 2},
                                      {10.0, 20.0}, 3, 1);
  const RateCurve direct = snr_sweep({1, 2, 3, 3}, kTwoModes,
                                     {10.0, 20.0}, 3, 1);
  CHECK(swapped.r1[0] == direct.r2[0]);
  CHECK(swapped.r2[0] == direct.r1[0]);
}

TEST_CASE("slope regression is exact on a synthetic line") {
  RateCurve curve;
  curve.snr_db = {30.0, 40.0, 50.0};
  const double scale = std::log2(10.0) / 10.0;
  for (double db : curve.snr_db) {
    curve.r1.push_back(1.5 * db * scale + 3.0);
    curve.r2.push_back(0.5 * db * scale + 1.0);
  }
  const SlopeEstimate est = estimate_slopes(curve, 30.0);
  CHECK(est.window == 3);
  CHECK(std::abs(est.d1_hat - 1.5) < 1e-12);
  CHECK(std::abs(est.d2_hat - 0.5) < 1e-12);
  CHECK(est.stderr1 < 1e-12);

  CHECK_THROWS_AS(estimate_slopes(curve, 45.0), std::invalid_argument);
}

TEST_CASE("CSV export carries the documented header and 12 digits") {
  RateCurve curve;
  curve.snr_db = {0.0, 10.0};
  curve.r1 = {0.123456789012345, 1.0};
  curve.r2 = {0.5, 2.0 / 3.0};
  curve.trials = 7;
  curve.seed = 99;
  const std::string csv = rate_curve_csv(curve);
  CHECK(csv.rfind("snr_db,r1_bits,r2_bits,trials,seed\n", 0) == 0);
  CHECK(csv.find("0.123456789012") != std::string::npos);
  CHECK(csv.find("0.666666666667") != std::string::npos);
  CHECK(csv.find(",7,99\n") != std::string::npos);
}

}  // TEST_SUITE
