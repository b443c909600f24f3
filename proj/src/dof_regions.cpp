#include "dofalign/dof_regions.hpp"

#include <algorithm>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "dofalign/coverage.hpp"

namespace dofalign {

std::string rat_to_string(const Rat& r) {
  std::string s = std::to_string(r.numerator());
  if (r.denominator() != 1) s += "/" + std::to_string(r.denominator());
  return s;
}

Rat rat_from_string(const std::string& s) {
  const auto bad = [&] {
    return std::invalid_argument("malformed rational: \"" + s + "\"");
  };
  const auto parse_int = [&](const std::string& t) {
    if (t.empty()) throw bad();
    std::size_t pos = 0;
    long long v = 0;
    try {
      v = std::stoll(t, &pos);
    } catch (const std::exception&) {
      throw bad();
    }
    if (pos != t.size()) throw bad();
    return v;
  };
  const auto slash = s.find('/');
  if (slash == std::string::npos) return Rat(parse_int(s));
  const long long num = parse_int(s.substr(0, slash));
  const long long den = parse_int(s.substr(slash + 1));
  if (den == 0) throw bad();
  return Rat(num, den);
}

double rat_to_double(const Rat& r) {
  return static_cast<double>(r.numerator()) /
         static_cast<double>(r.denominator());
}

namespace {

void check_half_plane(const HalfPlane& h) {
  if (h.a1 == 0 && h.a2 == 0) {
    throw std::invalid_argument("half-plane with zero normal");
  }
  if (h.a1 < 0 || h.a2 < 0 || h.b < 0) {
    throw std::invalid_argument("half-plane with negative coefficient");
  }
}

bool satisfies(const std::vector<HalfPlane>& ineqs, const DofPoint& p) {
  if (p.d1 < 0 || p.d2 < 0) return false;
  for (const auto& h : ineqs) {
    if (h.a1 * p.d1 + h.a2 * p.d2 > h.b) return false;
  }
  return true;
}

// Vertex enumeration by pairwise line intersection plus feasibility filter.
// In 2D a feasible point with two active, independent constraints is extreme,
// so no hull step is needed. The axes d1 = 0, d2 = 0 take part as lines.
std::vector<DofPoint> enumerate_vertices_impl(
    const std::vector<HalfPlane>& ineqs) {
  bool d1_bounded = false, d2_bounded = false;
  for (const auto& h : ineqs) {
    check_half_plane(h);
    if (h.a1 > 0) d1_bounded = true;
    if (h.a2 > 0) d2_bounded = true;
  }
  if (!d1_bounded || !d2_bounded) {
    throw std::runtime_error("region is unbounded");
  }

  struct Line {
    Rat a1, a2, b;  // a1*x + a2*y = b
  };
  std::vector<Line> lines;
  lines.push_back({Rat(1), Rat(0), Rat(0)});  // d1 = 0
  lines.push_back({Rat(0), Rat(1), Rat(0)});  // d2 = 0
  for (const auto& h : ineqs) lines.push_back({h.a1, h.a2, h.b});

  std::vector<DofPoint> pts;
  for (std::size_t i = 0; i + 1 < lines.size(); ++i) {
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      const Rat det = lines[i].a1 * lines[j].a2 - lines[i].a2 * lines[j].a1;
      if (det == 0) continue;
      DofPoint p{(lines[i].b * lines[j].a2 - lines[i].a2 * lines[j].b) / det,
                 (lines[i].a1 * lines[j].b - lines[i].b * lines[j].a1) / det};
      if (satisfies(ineqs, p)) pts.push_back(p);
    }
  }

  const auto lex_less = [](const DofPoint& p, const DofPoint& q) {
    return p.d1 != q.d1 ? p.d1 < q.d1 : p.d2 < q.d2;
  };
  std::sort(pts.begin(), pts.end(), lex_less);
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  // Counterclockwise from (0,0): ascending angle seen from the origin. Two
  // distinct vertices of a convex polygon with (0,0) extreme are never
  // collinear with the origin, so the cross product is a strict order.
  const DofPoint origin{Rat(0), Rat(0)};
  std::vector<DofPoint> rest;
  for (const auto& p : pts) {
    if (!(p == origin)) rest.push_back(p);
  }
  std::sort(rest.begin(), rest.end(), [](const DofPoint& p, const DofPoint& q) {
    const Rat cross = p.d1 * q.d2 - p.d2 * q.d1;
    if (cross != 0) return cross > 0;
    return p.d1 * p.d1 + p.d2 * p.d2 < q.d1 * q.d1 + q.d2 * q.d2;
  });

  std::vector<DofPoint> out;
  out.push_back(origin);
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

DofRegion make_region(std::vector<HalfPlane> ineqs) {
  DofRegion r;
  r.inequalities = std::move(ineqs);
  r.vertices = enumerate_vertices_impl(r.inequalities);
  return r;
}

HalfPlane box_d1(const SystemConfig& c) {
  return {Rat(1), Rat(0), Rat(std::min(c.m1, c.n1))};
}

HalfPlane box_d2(const SystemConfig& c) {
  return {Rat(0), Rat(1), Rat(std::min(c.m2, c.n2))};
}

DofRegion zic_csit_region(const SystemConfig& c) {
  const long long sum = std::min({std::max(c.n1, c.m2),
                                  c.n1 + c.n2, c.m1 + c.m2});
  return make_region({box_d1(c), box_d2(c), {Rat(1), Rat(1), Rat(sum)}});
}

DofRegion fic_csit_region(const SystemConfig& c) {
  const long long sum = std::min({std::max(c.n1, c.m2), std::max(c.m1, c.n2),
                                  c.n1 + c.n2, c.m1 + c.m2});
  return make_region({box_d1(c), box_d2(c), {Rat(1), Rat(1), Rat(sum)}});
}

// Sum bound d1 + [min(N1,N2,M2)/min(N2,M2)] d2 <= min(M1+M2, N1); the only
// cross constraint of the Z channel without CSIT.
HalfPlane zic_no_csit_sum(const SystemConfig& c) {
  return {Rat(1), Rat(std::min({c.n1, c.n2, c.m2}), std::min(c.n2, c.m2)),
          Rat(std::min(c.m1 + c.m2, c.n1))};
}

DofRegion zic_no_csit_region(const SystemConfig& c) {
  return make_region({box_d1(c), box_d2(c), zic_no_csit_sum(c)});
}

DofRegion fic_no_csit_region(const SystemConfig& c) {
  HalfPlane cross2{Rat(std::min({c.n1, c.n2, c.m1}), std::min(c.n1, c.m1)),
                   Rat(1), Rat(std::min(c.m1 + c.m2, c.n2))};
  return make_region({box_d1(c), box_d2(c), zic_no_csit_sum(c), cross2});
}

void require_switching_shape(const SystemConfig& c) {
  if (!(c.m1 < c.n1 && c.n1 < c.min_m2_n2())) {
    throw std::invalid_argument(
        "limited-modes region requires M1 < N1 < min(M2,N2), got " +
        c.to_string());
  }
}

std::vector<HalfPlane> limited_modes_inequalities(const SystemConfig& c,
                                                  int k) {
  require_switching_shape(c);
  if (k < c.m1 || k > c.n1) {
    throw std::invalid_argument("mode count K=" + std::to_string(k) +
                                " outside [M1, N1] for " + c.to_string());
  }
  const long long mbar = c.min_m2_n2();
  const long long j = mbar - (c.n1 - k);  // > 0 in this shape
  const Rat rhs = Rat(c.m1) + Rat(k * (c.n1 - c.m1) + (mbar - c.n1) * (k - c.m1), j);
  return {box_d1(c), box_d2(c), {Rat(1), Rat(k, j), rhs}};
}

// Swaps user roles in a half-plane list (d1 <-> d2).
std::vector<HalfPlane> swap_users(std::vector<HalfPlane> ineqs) {
  for (auto& h : ineqs) std::swap(h.a1, h.a2);
  return ineqs;
}

SystemConfig swap_config(const SystemConfig& c) {
  return {c.m2, c.n2, c.m1, c.n1};
}

std::vector<HalfPlane> iid_isotropic_inequalities(const SystemConfig& c) {
  require_switching_shape(c);
  // d1 + [(min(N1,M2)-alpha)/(min(N2,M2)-alpha)] (d2 - alpha) <= min(M1,N1)
  // with alpha = min(M1+M2,N1) - min(M1,N1), written as a single half-plane.
  const long long alpha =
      std::min(c.m1 + c.m2, c.n1) - std::min(c.m1, c.n1);
  const Rat coef = Rat(std::min(c.n1, c.m2) - alpha,
                       std::min(c.n2, c.m2) - alpha);
  const Rat rhs = Rat(std::min(c.m1, c.n1)) + coef * alpha;
  return {box_d1(c), box_d2(c), {Rat(1), coef, rhs}};
}

}  // namespace

DofRegion limited_modes_region(const SystemConfig& config, int k) {
  return make_region(limited_modes_inequalities(config, k));
}

DofRegion iid_isotropic_region(const SystemConfig& config) {
  return make_region(iid_isotropic_inequalities(config));
}

DofRegion build_region(const SystemConfig& config, const Scenario& scenario) {
  coverage::touch(coverage::Op::BuildRegion);
  const CaseLabel label = classify(config, scenario);
  const bool swapped = label.side == ReconfigurableSide::Tx2;
  const SystemConfig cfg = swapped ? swap_config(config) : config;
  const int k = scenario.modes.value_or(swapped ? config.m2 : config.m1);

  switch (label.result) {
    case GoverningResult::Thm1ZicCsit:
      return zic_csit_region(config);
    case GoverningResult::FicCsit:
      return fic_csit_region(config);
    case GoverningResult::Thm2C1:
    case GoverningResult::Thm2C2:
      return zic_no_csit_region(config);
    case GoverningResult::Thm3C1:
    case GoverningResult::Thm3C2:
    case GoverningResult::Thm3C3:
      return fic_no_csit_region(config);
    case GoverningResult::Thm4LimitedModes: {
      auto ineqs = limited_modes_inequalities(cfg, k);
      return make_region(swapped ? swap_users(std::move(ineqs))
                                 : std::move(ineqs));
    }
    case GoverningResult::IidNoSwitching: {
      auto ineqs = iid_isotropic_inequalities(cfg);
      return make_region(swapped ? swap_users(std::move(ineqs))
                                 : std::move(ineqs));
    }
  }
  throw std::logic_error("unreachable");
}

std::vector<DofPoint> enumerate_vertices(const DofRegion& region) {
  coverage::touch(coverage::Op::EnumerateVertices);
  return enumerate_vertices_impl(region.inequalities);
}

bool contains(const DofRegion& region, const DofPoint& p) {
  coverage::touch(coverage::Op::Contains);
  return satisfies(region.inequalities, p);
}

bool region_equal(const DofRegion& r1, const DofRegion& r2) {
  coverage::touch(coverage::Op::RegionEqual);
  return r1.vertices == r2.vertices;
}

bool region_subset(const DofRegion& r1, const DofRegion& r2) {
  coverage::touch(coverage::Op::RegionSubset);
  return std::all_of(r1.vertices.begin(), r1.vertices.end(),
                     [&](const DofPoint& v) { return contains(r2, v); });
}

int zic_csit_zf_allocation(const SystemConfig& config, int d1) {
  coverage::touch(coverage::Op::ZicCsitZfAllocation);
  if (d1 < 0 || d1 > std::min(config.m1, config.n1)) {
    throw std::invalid_argument("d1=" + std::to_string(d1) +
                                " outside [0, min(M1,N1)] for " +
                                config.to_string());
  }
  if (config.m2 >= config.n1) {
    // Transmitter 2 sends M2-N1 streams in the cross-channel null space plus
    // N1-d1 in its row space, capped by its receiver.
    return std::min((config.m2 - config.n1) + (config.n1 - d1), config.n2);
  }
  // Otherwise user 1 needs min(N1-d2, M1) >= d1, i.e. d2 <= N1-d1.
  return std::min({config.m2, config.n2, config.n1 - d1});
}

DofPoint limited_modes_corner(const SystemConfig& config, int k) {
  coverage::touch(coverage::Op::LimitedModesCorner);
  require_switching_shape(config);
  if (k < config.m1 || k > config.n1) {
    throw std::invalid_argument("mode count K=" + std::to_string(k) +
                                " outside [M1, N1] for " + config.to_string());
  }
  const long long mbar = config.min_m2_n2();
  return {Rat(config.m1),
          Rat(mbar * (k - config.m1) + config.m1 * (config.n1 - k), k)};
}

nlohmann::json region_to_json(const DofRegion& region) {
  nlohmann::json j;
  j["inequalities"] = nlohmann::json::array();
  for (const auto& h : region.inequalities) {
    j["inequalities"].push_back({{"a1", rat_to_string(h.a1)},
                                 {"a2", rat_to_string(h.a2)},
                                 {"b", rat_to_string(h.b)}});
  }
  j["vertices"] = nlohmann::json::array();
  for (const auto& v : region.vertices) {
    j["vertices"].push_back({rat_to_string(v.d1), rat_to_string(v.d2)});
  }
  return j;
}

DofRegion region_from_json(const nlohmann::json& j) {
  DofRegion r;
  for (const auto& h : j.at("inequalities")) {
    r.inequalities.push_back({rat_from_string(h.at("a1").get<std::string>()),
                              rat_from_string(h.at("a2").get<std::string>()),
                              rat_from_string(h.at("b").get<std::string>())});
  }
  for (const auto& v : j.at("vertices")) {
    r.vertices.push_back({rat_from_string(v.at(0).get<std::string>()),
                          rat_from_string(v.at(1).get<std::string>())});
  }
  return r;
}

}  // namespace dofalign
