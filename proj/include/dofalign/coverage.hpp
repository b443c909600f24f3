#pragma once

#include <array>
#include <atomic>
#include <cstddef>
#include <string_view>
#include <vector>

namespace dofalign::coverage {

// Process-wide operation-touch registry. Every public operation marks itself
// on entry; the verifier's combined run asserts that its suites reached all
// of them. Relaxed atomics keep the cost negligible in Monte Carlo loops.

enum class Op : int {
  Classify,
  ReduceMinAntennas,
  BuildRegion,
  EnumerateVertices,
  Contains,
  RegionEqual,
  RegionSubset,
  ZicCsitZfAllocation,
  LimitedModesCorner,
  DftNullingPair,
  TimeExpandPair,
  CyclicPattern,
  EffectiveDirectChannel,
  RMatrixCheck,
  BetaNulling,
  SuccessiveBeamformer,
  BuildSpaceFreqScheme,
  VerifyConditions,
  DrawBlock,
  BlockRates,
  SnrSweep,
  EstimateSlopes,
  kCount,
};

inline constexpr std::size_t kOpCount = static_cast<std::size_t>(Op::kCount);

std::string_view op_name(Op op);

void touch(Op op);
void reset();
bool touched(Op op);

/// Names of operations never touched since the last reset().
std::vector<std::string_view> untouched();

}  // namespace dofalign::coverage
