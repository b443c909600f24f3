#pragma once

#include <optional>
#include <string>

namespace dofalign {

// Antenna counts are capped to keep time-expanded matrices (up to
// N1^2 x M1*N1 entries) at desk scale.
inline constexpr int kMaxAntennas = 64;

/// Antenna counts of a two-user system: transmit 1, receive 1, transmit 2,
/// receive 2. All counts are validated to lie in [1, kMaxAntennas].
struct SystemConfig {
  int m1 = 1;
  int n1 = 1;
  int m2 = 1;
  int n2 = 1;

  SystemConfig() = default;
  SystemConfig(int m1_, int n1_, int m2_, int n2_);

  /// min(M2, N2), the effective antenna count of the interference-free user.
  int min_m2_n2() const { return m2 < n2 ? m2 : n2; }

  bool operator==(const SystemConfig&) const = default;

  std::string to_string() const;  // "M1,N1,M2,N2"
};

enum class Channel { Zic, Fic };
enum class Csit { Present, Absent };

/// Channel/CSIT scenario. `modes` is the number K of antenna modes at the
/// reconfigurable transmitter; it is meaningful only when CSIT is absent and
/// defaults to that side's transmit antenna count (no switching).
struct Scenario {
  Channel channel = Channel::Zic;
  Csit csit = Csit::Present;
  std::optional<int> modes;

  std::string to_string() const;  // e.g. "zic no-csit K=2"
};

enum class GoverningResult {
  Thm1ZicCsit,
  FicCsit,
  Thm2C1,
  Thm2C2,
  Thm3C1,
  Thm3C2,
  Thm3C3,
  Thm4LimitedModes,
  IidNoSwitching,
};

enum class ReconfigurableSide { Tx1, Tx2, None };

/// The unique governing case for a (config, scenario) pair.
struct CaseLabel {
  GoverningResult result;
  ReconfigurableSide side;

  bool operator==(const CaseLabel&) const = default;
};

std::string to_string(GoverningResult r);
std::string to_string(ReconfigurableSide s);

/// Maps (config, scenario) to its governing case.
///
/// CSIT scenarios always classify to the CSIT results. Without CSIT, the
/// shape M1 < N1 < min(M2,N2) makes transmitter 1 the reconfigurable side:
/// K >= N1 gives the full-region case, K == M1 the i.i.d. baseline, and
/// M1 < K < N1 the limited-modes case. The mirrored full-interference shape
/// M2 < N2 < min(M1,N1) puts the reconfigurable antennas at transmitter 2.
/// All other shapes need no switching.
///
/// Throws std::invalid_argument when K is set below the reconfigurable
/// side's transmit antenna count.
CaseLabel classify(const SystemConfig& config, const Scenario& scenario);

/// Reduces receiver/transmitter 2 to its effective antenna count:
/// (M1, N1, min(M2,N2), min(M2,N2)). Idempotent.
SystemConfig reduce_min_antennas(const SystemConfig& config);

}  // namespace dofalign
