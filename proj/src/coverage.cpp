#include "dofalign/coverage.hpp"

namespace dofalign::coverage {

namespace {
std::array<std::atomic<bool>, kOpCount>& flags() {
  static std::array<std::atomic<bool>, kOpCount> f{};
  return f;
}
}  // namespace

std::string_view op_name(Op op) {
  switch (op) {
    case Op::Classify: return "classify";
    case Op::ReduceMinAntennas: return "reduce_min_antennas";
    case Op::BuildRegion: return "build_region";
    case Op::EnumerateVertices: return "enumerate_vertices";
    case Op::Contains: return "contains";
    case Op::RegionEqual: return "region_equal";
    case Op::RegionSubset: return "region_subset";
    case Op::ZicCsitZfAllocation: return "zic_csit_zf_allocation";
    case Op::LimitedModesCorner: return "limited_modes_corner";
    case Op::DftNullingPair: return "dft_nulling_pair";
    case Op::TimeExpandPair: return "time_expand_pair";
    case Op::CyclicPattern: return "cyclic_pattern";
    case Op::EffectiveDirectChannel: return "effective_direct_channel";
    case Op::RMatrixCheck: return "r_matrix_check";
    case Op::BetaNulling: return "beta_nulling";
    case Op::SuccessiveBeamformer: return "successive_beamformer";
    case Op::BuildSpaceFreqScheme: return "build_space_freq_scheme";
    case Op::VerifyConditions: return "verify_conditions";
    case Op::DrawBlock: return "draw_block";
    case Op::BlockRates: return "block_rates";
    case Op::SnrSweep: return "snr_sweep";
    case Op::EstimateSlopes: return "estimate_slopes";
    case Op::kCount: break;
  }
  return "?";
}

void touch(Op op) {
  flags()[static_cast<std::size_t>(op)].store(true, std::memory_order_relaxed);
}

void reset() {
  for (auto& f : flags()) f.store(false, std::memory_order_relaxed);
}

bool touched(Op op) {
  return flags()[static_cast<std::size_t>(op)].load(std::memory_order_relaxed);
}

std::vector<std::string_view> untouched() {
  std::vector<std::string_view> out;
  for (std::size_t i = 0; i < kOpCount; ++i) {
    if (!flags()[i].load(std::memory_order_relaxed)) {
      out.push_back(op_name(static_cast<Op>(i)));
    }
  }
  return out;
}

}  // namespace dofalign::coverage
