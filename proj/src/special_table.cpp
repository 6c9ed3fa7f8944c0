#include "regpoly/special_table.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <ostream>

namespace regpoly {

SpecialTable::SpecialTable(int k_max) : k_max_(k_max), min_gap_(std::numeric_limits<double>::infinity()) {
  if (k_max < 3) throw BadK(k_max);

  for (int k = 3; k <= k_max; ++k) {
    for (int d = 1; d <= max_skip(k); ++d) {
      if (std::gcd(d, k) == 1) entries_.push_back({k, d, 0.0});
    }
  }
  // Ascending angle is descending d/k; compare the fractions exactly.
  std::sort(entries_.begin(), entries_.end(), [](const SpecialEntry& a, const SpecialEntry& b) {
    return static_cast<std::int64_t>(a.d) * b.k > static_cast<std::int64_t>(b.d) * a.k;
  });
  for (SpecialEntry& e : entries_) e.angle = apex_angle(e.k, e.d);
  for (std::size_t i = 1; i < entries_.size(); ++i) {
    min_gap_ = std::min(min_gap_, entries_[i].angle - entries_[i - 1].angle);
  }
}

std::size_t SpecialTable::nearest(double angle) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), angle,
                             [](const SpecialEntry& e, double a) { return e.angle < a; });
  if (it == entries_.end()) return entries_.size() - 1;
  const auto idx = static_cast<std::size_t>(it - entries_.begin());
  if (idx == 0) return 0;
  return (angle - entries_[idx - 1].angle) <= (it->angle - angle) ? idx - 1 : idx;
}

void SpecialTable::dump(std::ostream& os) const {
  os << "# regpoly-special-table v1\n";
  const auto precision = os.precision(17);
  for (const SpecialEntry& e : entries_) os << e.k << ' ' << e.d << ' ' << e.angle << '\n';
  os.precision(precision);
}

bool is_special(int k, int d) {
  if (k < 3) throw BadK(k);
  if (d < 1 || d > max_skip(k)) throw BadSkip(k, d);
  return std::gcd(d, k) == 1;
}

namespace {

std::optional<CandidateGon> try_entry(std::span<const Vec2> points, const std::array<int, 3>& t,
                                      const SpecialEntry& e, const Vec2& center, double radius,
                                      double tol_point) {
  const Vec2& p = points[t[0]];
  const Vec2& q = points[t[1]];
  const Vec2& r = points[t[2]];
  const Vec2 rel = p - center;
  const double phase = std::atan2(rel.y(), rel.x());

  const Vec2 plus = polygon_vertex(center, radius, phase, e.k, e.d);
  const Vec2 minus = polygon_vertex(center, radius, phase, e.k, e.k - e.d);
  CandidateGon cand{e.k, e.d, center, radius, phase, t};
  if ((q - plus).norm() <= tol_point && (r - minus).norm() <= tol_point) return cand;
  if ((r - plus).norm() <= tol_point && (q - minus).norm() <= tol_point) {
    std::swap(cand.seed_ids[1], cand.seed_ids[2]);
    return cand;
  }
  return std::nullopt;
}

}  // namespace

std::optional<CandidateGon> classify_triangle(std::span<const Vec2> points,
                                              const std::array<int, 3>& triple,
                                              const SpecialTable& table, const Tolerances& tol) {
  const auto [pi, qi, ri] = triple;
  if (pi == qi || pi == ri || qi == ri) return std::nullopt;
  const Vec2& p = points[pi];
  const Vec2& q = points[qi];
  const Vec2& r = points[ri];

  if (std::abs((q - p).norm() - (r - p).norm()) > 2.0 * tol.length) return std::nullopt;
  const auto center = try_circumcenter(p, q, r);
  if (!center) return std::nullopt;
  const double radius = (p - *center).norm();

  const double angle = angle_at(p, q, r);
  const auto entries = table.entries();
  const std::size_t best = table.nearest(angle);

  std::array<std::size_t, 3> order{best, best, best};
  std::size_t count = 1;
  if (best > 0) order[count++] = best - 1;
  if (best + 1 < entries.size()) order[count++] = best + 1;

  for (std::size_t i = 0; i < count; ++i) {
    const SpecialEntry& e = entries[order[i]];
    if (std::abs(e.angle - angle) > tol.angle) continue;
    if (auto cand = try_entry(points, triple, e, *center, radius, tol.point)) return cand;
  }
  return std::nullopt;
}

}  // namespace regpoly
