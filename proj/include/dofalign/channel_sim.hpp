#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "dofalign/core.hpp"
#include "dofalign/scheme_synthesis.hpp"

namespace dofalign {

/// One coherence block. The bank columns are the per-mode channels into
/// receiver 1; all entries are i.i.d. CN(0,1). h21 is drawn only for the
/// full interference channel.
struct ChannelBlock {
  Eigen::MatrixXcd bank;  // N1 x K
  Eigen::MatrixXcd h12;   // N1 x M2
  Eigen::MatrixXcd h22;   // N2 x M2
  std::optional<Eigen::MatrixXcd> h21;  // N2 x M1
  int coherence = 1;      // L slots, >= the scheme expansion
};

/// Per-user average rates over an ascending SNR grid (dB; transmit power is
/// linear with unit-variance noise).
struct RateCurve {
  std::vector<double> snr_db;
  std::vector<double> r1;  // bits per channel use
  std::vector<double> r2;
  int trials = 0;
  std::uint64_t seed = 0;
};

/// High-SNR slope fit for both users.
struct SlopeEstimate {
  double d1_hat = 0.0;
  double d2_hat = 0.0;
  int window = 0;  // grid points used
  double stderr1 = 0.0;
  double stderr2 = 0.0;
};

/// Deterministic replacement for a seed sequence: mixes (seed, a, b) into one
/// RNG stream seed, so Monte Carlo trials are schedule independent.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b);

/// Draws one coherence block with k >= M1 bank modes; identical seeds give
/// identical blocks. Entries are filled in a fixed order (bank, h12, h22,
/// then h21 when present; column-major within each matrix).
ChannelBlock draw_block(const SystemConfig& config, int k, std::uint64_t seed,
                        Channel channel = Channel::Zic);

/// Gaussian-input log-det rates of a scheme on one block, per channel use:
///   r1 = (1/T) log2 det(I + (p/M1) Sigma^-1 A A^H),  Sigma = Q~ Q~^H,
///   r2 = (1/T) log2 det(I + (p/s2) G G^H),           G = (I ox h22) P~.
std::pair<double, double> block_rates(const ChannelBlock& block,
                                      const Scheme& scheme, double p_linear);

/// Averages block_rates over `trials` independent blocks per grid point,
/// rebuilding the scheme per block when it is channel dependent (K < N1).
/// Deterministic given the seed regardless of the worker count (0 = use all
/// hardware threads, overridable via DOF_ALIGN_THREADS).
RateCurve snr_sweep(const SystemConfig& config, const Scenario& scenario,
                    const std::vector<double>& grid_db, int trials,
                    std::uint64_t seed, int threads = 0);

/// Least-squares slope of r_i against log2(p) over the grid points at or
/// above min_snr_db. Needs at least two such points.
SlopeEstimate estimate_slopes(const RateCurve& curve, double min_snr_db);

/// CSV export: header `snr_db,r1_bits,r2_bits,trials,seed`, floats at 12
/// significant digits.
std::string rate_curve_csv(const RateCurve& curve);

}  // namespace dofalign
