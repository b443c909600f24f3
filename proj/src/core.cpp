#include "dofalign/core.hpp"

#include <algorithm>
#include <stdexcept>

#include "dofalign/coverage.hpp"

namespace dofalign {

SystemConfig::SystemConfig(int m1_, int n1_, int m2_, int n2_)
    : m1(m1_), n1(n1_), m2(m2_), n2(n2_) {
  for (int v : {m1, n1, m2, n2}) {
    if (v < 1 || v > kMaxAntennas) {
      throw std::invalid_argument("antenna counts must lie in [1, " +
                                  std::to_string(kMaxAntennas) +
                                  "], got " + to_string());
    }
  }
}

std::string SystemConfig::to_string() const {
  return std::to_string(m1) + "," + std::to_string(n1) + "," +
         std::to_string(m2) + "," + std::to_string(n2);
}

std::string Scenario::to_string() const {
  std::string s = channel == Channel::Zic ? "zic" : "fic";
  s += csit == Csit::Present ? " csit" : " no-csit";
  if (modes) s += " K=" + std::to_string(*modes);
  return s;
}

std::string to_string(GoverningResult r) {
  switch (r) {
    case GoverningResult::Thm1ZicCsit: return "Thm1-ZIC-CSIT";
    case GoverningResult::FicCsit: return "FIC-CSIT";
    case GoverningResult::Thm2C1: return "Thm2-C1";
    case GoverningResult::Thm2C2: return "Thm2-C2";
    case GoverningResult::Thm3C1: return "Thm3-C1";
    case GoverningResult::Thm3C2: return "Thm3-C2";
    case GoverningResult::Thm3C3: return "Thm3-C3";
    case GoverningResult::Thm4LimitedModes: return "Thm4-LimitedModes";
    case GoverningResult::IidNoSwitching: return "IID-NoSwitching";
  }
  return "?";
}

std::string to_string(ReconfigurableSide s) {
  switch (s) {
    case ReconfigurableSide::Tx1: return "Tx1";
    case ReconfigurableSide::Tx2: return "Tx2";
    case ReconfigurableSide::None: return "None";
  }
  return "?";
}

CaseLabel classify(const SystemConfig& config, const Scenario& scenario) {
  coverage::touch(coverage::Op::Classify);

  if (scenario.csit == Csit::Present) {
    return {scenario.channel == Channel::Zic ? GoverningResult::Thm1ZicCsit
                                             : GoverningResult::FicCsit,
            ReconfigurableSide::None};
  }

  const bool tx1_shape =
      config.m1 < config.n1 && config.n1 < std::min(config.m2, config.n2);
  const bool tx2_shape =
      scenario.channel == Channel::Fic && config.m2 < config.n2 &&
      config.n2 < std::min(config.m1, config.n1);

  // Only one transmitter carries reconfigurable antennas; transmitter 1 by
  // default, transmitter 2 only in the mirrored full-interference shape.
  const ReconfigurableSide side = tx1_shape   ? ReconfigurableSide::Tx1
                                  : tx2_shape ? ReconfigurableSide::Tx2
                                              : ReconfigurableSide::None;
  const int side_m = side == ReconfigurableSide::Tx2 ? config.m2 : config.m1;
  const int side_n = side == ReconfigurableSide::Tx2 ? config.n2 : config.n1;

  const int k = scenario.modes.value_or(side_m);
  if (k < side_m) {
    throw std::invalid_argument(
        "mode count K=" + std::to_string(k) +
        " is below the reconfigurable side's transmit antenna count " +
        std::to_string(side_m));
  }

  if (tx1_shape) {
    if (k >= side_n) {
      return {scenario.channel == Channel::Zic ? GoverningResult::Thm2C1
                                               : GoverningResult::Thm3C1,
              side};
    }
    if (k == side_m) return {GoverningResult::IidNoSwitching, side};
    return {GoverningResult::Thm4LimitedModes, side};
  }
  if (tx2_shape) {
    if (k >= side_n) return {GoverningResult::Thm3C2, side};
    if (k == side_m) return {GoverningResult::IidNoSwitching, side};
    return {GoverningResult::Thm4LimitedModes, side};
  }
  return {scenario.channel == Channel::Zic ? GoverningResult::Thm2C2
                                           : GoverningResult::Thm3C3,
          ReconfigurableSide::None};
}

SystemConfig reduce_min_antennas(const SystemConfig& config) {
  coverage::touch(coverage::Op::ReduceMinAntennas);
  const int m = config.min_m2_n2();
  return {config.m1, config.n1, m, m};
}

}  // namespace dofalign
