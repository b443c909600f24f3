#pragma once

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json_fwd.hpp>

#include "dofalign/core.hpp"

namespace dofalign {

/// Antenna-mode schedule over one time-expanded block: slot t uses the listed
/// mode indices (1-based, in [1..mode_count], distinct within a slot) on the
/// reconfigurable transmitter's antennas.
struct ModeSwitchPattern {
  int mode_count = 1;                    // K
  std::vector<std::vector<int>> slots;   // one entry of M1 indices per slot

  int expansion() const { return static_cast<int>(slots.size()); }

  /// Throws std::invalid_argument on out-of-range or repeated indices.
  void validate() const;
};

/// A time-expanded joint nulling/beamforming design.
///
/// tilde_q (s1 x N1*T) projects receiver 1 onto the interference-free
/// subspace; its rows satisfy tilde_q * tilde_q^H = c*I. tilde_p (M2*T x s2)
/// carries user 2's streams in unit-norm columns. `factors` keeps the
/// constituent matrices for audit: Q, P when the design is channel-blind with
/// full frequency nulling, or QF, QS, PaF, PaS, PbF, PbS for the joint
/// space-frequency case.
struct Scheme {
  int expansion = 1;  // T slots per block
  Eigen::MatrixXcd tilde_q;
  Eigen::MatrixXcd tilde_p;
  ModeSwitchPattern pattern;
  std::pair<int, int> streams{0, 0};  // per-block (s1, s2)
  std::vector<std::pair<std::string, Eigen::MatrixXcd>> factors;
};

/// Numerical check of a scheme's defining algebraic conditions.
struct ConditionReport {
  double nulling_residual = 0.0;        // max |tilde_q (I ox H12) tilde_p|
  double direct_rank_margin = 0.0;      // sigma_min/sigma_max of A-tilde
  double beamformer_rank_margin = 0.0;  // sigma_min/sigma_max of tilde_p
  bool nulling_pass = false;
  bool direct_rank_pass = false;
  bool beamformer_rank_pass = false;

  bool pass() const {
    return nulling_pass && direct_rank_pass && beamformer_rank_pass;
  }
};

struct DftNullingPair {
  Eigen::MatrixXcd q;  // m1 x n1, the first m1 DFT rows
  Eigen::MatrixXcd p;  // n1 x (n1-m1), conjugate DFT columns m1..n1-1
};

/// DFT-based nulling/beamforming pair with w = exp(-j*2*pi/n1):
/// q(i,t) = w^(i*t), p(t,k) = w^(-(m1+k)*t). q*p = 0 and [q^H, p] spans an
/// inverse-DFT basis. Requires 1 <= m1 < n1.
DftNullingPair dft_nulling_pair(int n1, int m1);

/// Time expansion (tilde_q, tilde_p) = (q ox I_n1, p ox I_m2), which turns
/// q*p = 0 into tilde_q (I ox H12) tilde_p = (q*p) ox H12 = 0.
std::pair<Eigen::MatrixXcd, Eigen::MatrixXcd> time_expand_pair(
    const Eigen::MatrixXcd& q, const Eigen::MatrixXcd& p, int m2, int n1);

/// Cyclic schedule: slot t selects modes (t, t+1, ..., t+m1-1) wrapping
/// around k. Requires m1 <= k.
ModeSwitchPattern cyclic_pattern(int k, int m1, int t_slots);

/// Effective direct channel after nulling: A = tilde_q * blockdiag over slots
/// of the bank columns the pattern selects. Square (s1 x s1) for the
/// synthesized schemes.
Eigen::MatrixXcd effective_direct_channel(const Eigen::MatrixXcd& bank,
                                          const ModeSwitchPattern& pattern,
                                          const Eigen::MatrixXcd& tilde_q);

/// Builds the cyclic-switching mixing matrix from G = diag(1, w, ...,
/// w^(n1-1)) — block (i, m) is (w^-m G)^i for i, m in 0..m1 — and reports
/// whether it is numerically full rank (sigma_min > 1e-9 sigma_max). Under
/// row/column permutation the blocks are Vandermonde on distinct roots of
/// unity, so this holds for every m1 < n1.
bool r_matrix_check(int n1, int m1);

/// Zero/one nulling matrix I_m1 ox 1_beta^T for beta = n1/m1; requires m1 to
/// divide n1.
Eigen::MatrixXcd beta_nulling(int n1, int m1);

/// Beamformer [I_(beta-1); -1^T] (beta x beta-1) enabling slot-by-slot
/// decoding of user 2: strictly upper entries are zero and 1_beta^T P = 0.
/// The last row is negated so the nulling identity holds exactly.
Eigen::MatrixXcd successive_beamformer(int beta);

/// Joint space-frequency nulling/beamforming scheme over T = k slots for the
/// shape M1 < N1 < min(M2,N2) (config is min-reduced internally), M1 <= k <=
/// N1. At k = N1 the spatial factors degenerate and the scheme is channel
/// blind (h12 unused); at k = M1 it is pure spatial zero forcing. Throws
/// std::invalid_argument on shape/range/dimension violations and
/// std::runtime_error when h12 is numerically degenerate.
Scheme build_space_freq_scheme(const SystemConfig& config, int k,
                               const Eigen::MatrixXcd& h12);

/// Evaluates the scheme's conditions against a mode bank and cross channel:
/// pass iff nulling residual < 1e-10 * ||h12||_F and both rank margins
/// exceed 1e-8.
ConditionReport verify_conditions(const Scheme& scheme,
                                  const Eigen::MatrixXcd& bank,
                                  const Eigen::MatrixXcd& h12);

/// Kronecker product (plumbing shared with the simulator).
Eigen::MatrixXcd kronecker(const Eigen::MatrixXcd& a,
                           const Eigen::MatrixXcd& b);

/// Vandermonde matrix [nodes^0; nodes^1; ...; nodes^(rows-1)] by columns.
Eigen::MatrixXcd vandermonde(int rows, const Eigen::VectorXcd& nodes);

/// Reference bank of m1*n1 modes built from powers of exp(-j*2*pi/n1^2),
/// together with its schedule and the node list for which the effective
/// direct channel is exactly the Vandermonde matrix on those nodes.
struct DftModeBank {
  Eigen::MatrixXcd bank;      // n1 x (m1*n1)
  ModeSwitchPattern pattern;  // n1 slots
  Eigen::VectorXcd nodes;     // m1*n1 distinct roots of unity
};
DftModeBank dft_mode_bank(int n1, int m1);

/// JSON with complex entries as [re, im] pairs, row-major, plus pattern,
/// stream counts and factor matrices. Round-trips losslessly.
nlohmann::json scheme_to_json(const Scheme& scheme);
Scheme scheme_from_json(const nlohmann::json& j);

}  // namespace dofalign
