#include "regpoly/geometry.hpp"

#include <string>

namespace regpoly {

Tolerances default_tolerances(std::span<const Vec2> points) {
  double diag = 1.0;
  if (points.size() >= 2) {
    Vec2 lo = points.front();
    Vec2 hi = points.front();
    for (const Vec2& p : points) {
      lo = lo.cwiseMin(p);
      hi = hi.cwiseMax(p);
    }
    const double d = (hi - lo).norm();
    if (d > 0 && std::isfinite(d)) diag = d;
  }
  Tolerances tol;
  tol.point = 1e-7 * diag;
  tol.length = tol.point;
  tol.angle = 1e-9;
  return tol;
}

void validate(const Tolerances& tol) {
  auto ok = [](double v) { return std::isfinite(v) && v > 0; };
  if (!ok(tol.point) || !ok(tol.length) || !ok(tol.angle)) {
    throw InvalidArgument("tolerances must be finite and strictly positive");
  }
}

PolygonIdentity identity(const RegularPolygon& polygon) {
  PolygonIdentity id{polygon.k, polygon.vertex_ids};
  std::sort(id.ids.begin(), id.ids.end());
  return id;
}

RegularPolygon canonical_polygon(std::span<const Vec2> points, std::vector<int> ids) {
  std::sort(ids.begin(), ids.end());
  const int k = static_cast<int>(ids.size());
  if (k < 3) throw BadK(k);

  RegularPolygon out;
  out.k = k;
  Vec2 sum = Vec2::Zero();
  for (int id : ids) sum += points[id];
  out.center = sum / k;

  double rsum = 0.0;
  for (int id : ids) rsum += (points[id] - out.center).norm();
  out.radius = rsum / k;

  constexpr double two_pi = 2.0 * std::numbers::pi;
  // Vertices a hair below angle 0 would otherwise wrap to ~2pi.
  constexpr double wrap_snap = 1e-9;
  std::vector<std::pair<double, int>> by_angle;
  by_angle.reserve(ids.size());
  for (int id : ids) {
    const Vec2 d = points[id] - out.center;
    double a = std::atan2(d.y(), d.x());
    if (a < 0) a += two_pi;
    if (a >= two_pi - wrap_snap) a = 0.0;
    by_angle.emplace_back(a, id);
  }
  std::sort(by_angle.begin(), by_angle.end());

  out.phase = canonical_phase(by_angle.front().first, k);
  out.vertex_ids.reserve(ids.size());
  for (const auto& [a, id] : by_angle) out.vertex_ids.push_back(id);
  return out;
}

bool satisfies_invariants(const RegularPolygon& polygon, std::span<const Vec2> points,
                          double tol_point) {
  if (polygon.k < 3 || static_cast<int>(polygon.vertex_ids.size()) != polygon.k) return false;
  if (!(polygon.radius > 0)) return false;
  const double period = 2.0 * std::numbers::pi / polygon.k;
  if (polygon.phase < 0 || polygon.phase >= period) return false;

  std::vector<int> sorted = polygon.vertex_ids;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;

  for (int j = 0; j < polygon.k; ++j) {
    const int id = polygon.vertex_ids[j];
    if (id < 0 || static_cast<std::size_t>(id) >= points.size()) return false;
    const Vec2 predicted = polygon_vertex(polygon.center, polygon.radius, polygon.phase, polygon.k, j);
    if ((points[id] - predicted).norm() > tol_point) return false;
  }
  return true;
}

}  // namespace regpoly
