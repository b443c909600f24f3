#pragma once

#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "dofalign/core.hpp"
#include "dofalign/rational.hpp"

namespace dofalign {

/// One inequality a1*d1 + a2*d2 <= b with exact rational coefficients.
/// All region inequalities have nonnegative coefficients and (a1,a2) != 0;
/// d1 >= 0 and d2 >= 0 are implicit and never stored.
struct HalfPlane {
  Rat a1, a2, b;

  bool operator==(const HalfPlane&) const = default;
};

/// A point (d1, d2) of the DoF plane, exact and nonnegative.
struct DofPoint {
  Rat d1, d2;

  bool operator==(const DofPoint&) const = default;
};

/// A bounded convex DoF polytope: the stated inequality list (redundant
/// members retained) plus the cached vertex list, counterclockwise starting
/// at (0,0) and duplicate-free.
struct DofRegion {
  std::vector<HalfPlane> inequalities;
  std::vector<DofPoint> vertices;
};

/// Builds the exact polytope of the governing case for (config, scenario),
/// with vertices cached. Classification errors propagate.
DofRegion build_region(const SystemConfig& config, const Scenario& scenario);

/// The limited-modes region for M1 < N1 < min(M2,N2) and M1 <= k <= N1.
/// k == N1 is admitted so the full-modes endpoint identity can be stated;
/// the scenario path routes K >= N1 to the full-region case instead.
/// Throws std::invalid_argument outside the shape or mode range.
DofRegion limited_modes_region(const SystemConfig& config, int k);

/// The no-switching i.i.d. isotropic-fading region for the same shape;
/// coincides with limited_modes_region(config, M1).
DofRegion iid_isotropic_region(const SystemConfig& config);

/// Exact vertices of the feasible set (first quadrant intersected with the
/// inequalities), counterclockwise starting at (0,0). Every returned point
/// satisfies all inequalities and none lies strictly inside the hull.
/// Throws std::runtime_error if the set is unbounded.
std::vector<DofPoint> enumerate_vertices(const DofRegion& region);

/// Exact membership test.
bool contains(const DofRegion& region, const DofPoint& p);

/// Equality and inclusion of regions as point sets, decided on canonical
/// vertex lists (different inequality lists can describe one polytope).
bool region_equal(const DofRegion& r1, const DofRegion& r2);
bool region_subset(const DofRegion& r1, const DofRegion& r2);

/// Zero-forcing stream count for user 2 when user 1 sends d1 streams in the
/// CSIT Z channel: the largest d2 that keeps both users decodable. The pair
/// (d1, d2) always lies in the CSIT region.
int zic_csit_zf_allocation(const SystemConfig& config, int d1);

/// Per-slot DoF pair (M1, (min(M2,N2)(K-M1) + M1(N1-K))/K) achieved with K
/// modes over K slots; lies on the limited-modes sum boundary.
DofPoint limited_modes_corner(const SystemConfig& config, int k);

/// JSON schema: {"inequalities":[{"a1":"2/3","a2":"1","b":"2"},...],
/// "vertices":[["0","0"],...]} with rationals as reduced "p/q" strings.
/// Round-trips bit-exactly.
nlohmann::json region_to_json(const DofRegion& region);
DofRegion region_from_json(const nlohmann::json& j);

}  // namespace dofalign
