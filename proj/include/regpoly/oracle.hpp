#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "regpoly/geometry.hpp"

namespace regpoly {

/// Exhaustive ground truth. Shares only the geometry primitives and the point
/// index with the detectors.
struct OracleReport {
  std::vector<RegularPolygon> polygons;
  std::map<int, std::size_t> counts_by_k;
  std::uint64_t isosceles_triple_count = 0;
};

/// Every regular k-gon, 3 <= k <= k_max, with all vertices in `points`.
///
/// Each pair a < b is tried as the counterclockwise edge leaving a polygon's
/// smallest id, for every k; the remaining vertices are probed until one is
/// missing. Results are sorted by identity.
std::vector<RegularPolygon> enumerate_all_gons(std::span<const Vec2> points, int k_max,
                                               const Tolerances& tol);

/// Every ordered triple (p, q, r) of distinct points with ||pq| - |pr|| <= tol_len. O(n^3).
std::vector<std::array<int, 3>> enumerate_isosceles(std::span<const Vec2> points,
                                                    const Tolerances& tol);

/// Ordered isosceles triples among the vertices of one regular k-gon:
/// k apices x (ceil(k/2) - 1) symmetric pairs x 2 orderings.
std::uint64_t isosceles_in_gon_count(int k);

OracleReport oracle_report(std::span<const Vec2> points, int k_max, const Tolerances& tol,
                           bool count_isosceles = false);

}  // namespace regpoly
