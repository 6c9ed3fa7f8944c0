#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <algorithm>
#include <cmath>
#include <compare>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

#include "regpoly/errors.hpp"

namespace regpoly {

template <typename Scalar>
using Vector2 = Eigen::Matrix<Scalar, 2, 1>;

using Vec2 = Vector2<double>;

/// Input sites. A point's id is its index in the set.
using PointSet = std::vector<Vec2>;

/// Proximity thresholds that stand in for exact equality.
struct Tolerances {
  double point = 1e-7;   ///< coincidence radius for point lookup
  double length = 1e-7;  ///< edge-length bucketing
  double angle = 1e-9;   ///< apex-angle matching, radians
};

/// tol_point = tol_len = 1e-7 x bounding-box diagonal, tol_angle = 1e-9.
Tolerances default_tolerances(std::span<const Vec2> points);

/// Throws InvalidArgument unless every tolerance is finite and positive.
void validate(const Tolerances& tol);

/// Regular k-gon whose vertices are input points.
///
/// `phase` is the angle of the canonical vertex and lies in [0, 2pi/k);
/// `vertex_ids` runs counterclockwise starting from that vertex.
struct RegularPolygon {
  int k = 0;
  Vec2 center = Vec2::Zero();
  double radius = 0.0;
  double phase = 0.0;
  std::vector<int> vertex_ids;
};

/// Identity of a polygon independent of its floating-point description.
struct PolygonIdentity {
  int k = 0;
  std::vector<int> ids;  // sorted

  auto operator<=>(const PolygonIdentity&) const = default;
};

PolygonIdentity identity(const RegularPolygon& polygon);

/// Builds the canonical description of the polygon on `ids` (any order).
/// The result depends only on the id set, so two detectors reporting the same
/// vertices produce bit-identical descriptions.
RegularPolygon canonical_polygon(std::span<const Vec2> points, std::vector<int> ids);

/// True when the polygon has k distinct vertex ids and every vertex lies within
/// tol_point of its predicted position.
bool satisfies_invariants(const RegularPolygon& polygon, std::span<const Vec2> points,
                          double tol_point);

/// Lexicographic (x, then y) order used by the sweep.
inline bool lex_less(const Vec2& a, const Vec2& b) {
  return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
}

/// Largest skip of an inscribed isosceles triangle: ceil(k/2) - 1.
constexpr int max_skip(int k) { return (k + 1) / 2 - 1; }

/// Angle at a vertex of a regular k-gon, pi - 2pi/k.
inline double interior_angle(int k) {
  if (k < 3) throw BadK(k);
  return std::numbers::pi - 2.0 * std::numbers::pi / k;
}

/// Apex angle of the isosceles triangle whose equal sides each skip d
/// vertices of a regular k-gon: pi (1 - 2d/k).
inline double apex_angle(int k, int d) {
  if (k < 3) throw BadK(k);
  if (d < 1 || d > max_skip(k)) throw BadSkip(k, d);
  return std::numbers::pi * (1.0 - 2.0 * static_cast<double>(d) / k);
}

/// Reduces `phase` modulo 2pi/k into [0, 2pi/k).
inline double canonical_phase(double phase, int k) {
  const double period = 2.0 * std::numbers::pi / k;
  double r = std::fmod(phase, period);
  if (r < 0) r += period;
  if (r >= period) r = 0.0;
  return r;
}

template <typename Scalar>
Vector2<Scalar> polygon_vertex(const Vector2<Scalar>& center, Scalar radius, Scalar phase, int k,
                               int j) {
  using std::cos;
  using std::sin;
  const Scalar theta = phase + Scalar(2) * std::numbers::pi_v<Scalar> * Scalar(j) / Scalar(k);
  return center + radius * Vector2<Scalar>(cos(theta), sin(theta));
}

/// Circumcenter of (p, q, r), or nullopt when |signed area| is below
/// 1e-12 x (max pairwise distance)^2.
template <typename Scalar>
std::optional<Vector2<Scalar>> try_circumcenter(const Vector2<Scalar>& p, const Vector2<Scalar>& q,
                                                const Vector2<Scalar>& r) {
  const Vector2<Scalar> b = q - p;
  const Vector2<Scalar> c = r - p;
  const Scalar cross = b.x() * c.y() - b.y() * c.x();
  const Scalar max_d2 = std::max({b.squaredNorm(), c.squaredNorm(), (r - q).squaredNorm()});
  if (std::abs(cross) / 2 < Scalar(1e-12) * max_d2 || max_d2 == Scalar(0)) {
    return std::nullopt;
  }
  const Scalar bb = b.squaredNorm();
  const Scalar cc = c.squaredNorm();
  const Scalar denom = 2 * cross;
  const Vector2<Scalar> offset((c.y() * bb - b.y() * cc) / denom, (b.x() * cc - c.x() * bb) / denom);
  return Vector2<Scalar>(p + offset);
}

template <typename Scalar>
Vector2<Scalar> circumcenter(const Vector2<Scalar>& p, const Vector2<Scalar>& q,
                             const Vector2<Scalar>& r) {
  if (auto c = try_circumcenter(p, q, r)) return *c;
  throw Collinear();
}

/// Angle between (q - p) and (r - p), in [0, pi].
template <typename Scalar>
Scalar angle_at(const Vector2<Scalar>& p, const Vector2<Scalar>& q, const Vector2<Scalar>& r) {
  const Vector2<Scalar> b = q - p;
  const Vector2<Scalar> c = r - p;
  using std::abs;
  using std::atan2;
  return atan2(abs(b.x() * c.y() - b.y() * c.x()), b.dot(c));
}

/// Rotates `v` about `center` by `theta` radians counterclockwise.
template <typename Scalar>
Vector2<Scalar> rotate_about(const Vector2<Scalar>& v, const Vector2<Scalar>& center, Scalar theta) {
  return center + Eigen::Rotation2D<Scalar>(theta) * (v - center);
}

}  // namespace regpoly
