#include "regpoly/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "regpoly/point_index.hpp"

namespace regpoly {

std::vector<RegularPolygon> enumerate_all_gons(std::span<const Vec2> points, int k_max,
                                               const Tolerances& tol) {
  const PointIndex index(points, tol.point);
  const int n = static_cast<int>(points.size());
  std::vector<RegularPolygon> out;
  if (n < 3 || k_max < 3) return out;
  k_max = std::min(k_max, n);

  // rotations[k][j] turns by 2pi j / k.
  std::vector<std::vector<Eigen::Matrix2d>> rotations(k_max + 1);
  for (int k = 3; k <= k_max; ++k) {
    rotations[k].resize(k);
    for (int j = 0; j < k; ++j) {
      rotations[k][j] = Eigen::Rotation2D<double>(2.0 * std::numbers::pi * j / k).toRotationMatrix();
    }
  }

  std::set<PolygonIdentity> seen;
  std::vector<int> ids;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      const Vec2 edge = points[b] - points[a];
      const Vec2 mid = 0.5 * (points[a] + points[b]);
      const Vec2 left(-edge.y(), edge.x());
      for (int k = 3; k <= k_max; ++k) {
        // Center on the left of a -> b, at apothem distance from the edge midpoint.
        const Vec2 center = mid + left * (0.5 / std::tan(std::numbers::pi / k));
        const Vec2 spoke = points[a] - center;
        ids.assign({a, b});
        bool complete = true;
        for (int j = 2; j < k; ++j) {
          const auto hit = index.query(center + rotations[k][j] * spoke);
          // Each polygon is reported from its smallest id.
          if (!hit || *hit < a) {
            complete = false;
            break;
          }
          ids.push_back(*hit);
        }
        if (!complete) continue;
        RegularPolygon poly = canonical_polygon(points, ids);
        if (seen.insert(identity(poly)).second) out.push_back(std::move(poly));
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const RegularPolygon& x, const RegularPolygon& y) {
    return identity(x) < identity(y);
  });
  return out;
}

std::vector<std::array<int, 3>> enumerate_isosceles(std::span<const Vec2> points,
                                                    const Tolerances& tol) {
  const int n = static_cast<int>(points.size());
  std::vector<std::array<int, 3>> out;
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) {
      if (q == p) continue;
      const double pq = (points[q] - points[p]).norm();
      for (int r = 0; r < n; ++r) {
        if (r == p || r == q) continue;
        if (std::abs(pq - (points[r] - points[p]).norm()) <= tol.length) out.push_back({p, q, r});
      }
    }
  }
  return out;
}

std::uint64_t isosceles_in_gon_count(int k) {
  if (k < 3) throw BadK(k);
  return 2ULL * static_cast<std::uint64_t>(k) * static_cast<std::uint64_t>(max_skip(k));
}

OracleReport oracle_report(std::span<const Vec2> points, int k_max, const Tolerances& tol,
                           bool count_isosceles) {
  OracleReport report;
  report.polygons = enumerate_all_gons(points, k_max, tol);
  for (const RegularPolygon& p : report.polygons) ++report.counts_by_k[p.k];
  if (count_isosceles) report.isosceles_triple_count = enumerate_isosceles(points, tol).size();
  return report;
}

}  // namespace regpoly
