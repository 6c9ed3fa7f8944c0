#include <gtest/gtest.h>

#include <Eigen/Dense>

#include "regpoly/geometry.hpp"
#include "regpoly/point_index.hpp"
#include "support.hpp"

using namespace regpoly;
using regpoly::testing::unit_square;

namespace {

constexpr double kPi = std::numbers::pi;

// Perpendicular-bisector system solved with a QR factorization; independent
// of the closed form used by circumcenter().
Vec2 bisector_solution(const Vec2& p, const Vec2& q, const Vec2& r) {
  Eigen::Matrix2d a;
  a.row(0) = 2 * (q - p).transpose();
  a.row(1) = 2 * (r - p).transpose();
  const Eigen::Vector2d b(q.squaredNorm() - p.squaredNorm(), r.squaredNorm() - p.squaredNorm());
  return a.colPivHouseholderQr().solve(b);
}

}  // namespace

TEST(PointIndex, IndexesUnitSquare) {
  const auto pts = unit_square();
  const PointIndex index = build_point_index(pts, regpoly::testing::tight(1e-9));
  EXPECT_EQ(index.size(), 4u);
  for (int i = 0; i < 4; ++i) EXPECT_EQ(query_point(index, pts[i]), i);
}

TEST(PointIndex, RejectsCoincidentPoints) {
  const PointSet pts{{0, 0}, {1e-12, 0}};
  try {
    build_point_index(pts, regpoly::testing::tight(1e-9));
    FAIL() << "expected DuplicatePoints";
  } catch (const DuplicatePoints& e) {
    EXPECT_EQ(e.id_a(), 0);
    EXPECT_EQ(e.id_b(), 1);
  }
}

TEST(PointIndex, SelfQueriesOnRandomPoints) {
  Rng rng = make_stream(7);
  std::uniform_real_distribution<double> u(0, 1);
  PointSet pts(1000);
  for (auto& p : pts) p = Vec2(u(rng), u(rng));
  const PointIndex index(pts, 1e-9);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(index.query(pts[i]), i);
}

TEST(PointIndex, QueryWithinRadiusOnly) {
  const auto pts = unit_square();
  const double tol = 1e-9;
  const PointIndex index(pts, tol);
  EXPECT_EQ(index.query(Vec2(1, 1)), 2);
  EXPECT_FALSE(index.query(Vec2(0.5, 0.5)).has_value());
  EXPECT_EQ(index.query(Vec2(1 + tol / 2, 1)), 2);
  EXPECT_FALSE(index.query(Vec2(1 + 2 * tol, 1)).has_value());
}

TEST(PointIndex, NearestWinsAcrossCells) {
  const double tol = 1.0;
  const PointSet pts{{0, 0}, {1.5, 0}};
  const PointIndex index(pts, tol);
  // Both points are within tol; the closer one is returned.
  EXPECT_EQ(index.query(Vec2(0.8, 0)), 1);
  EXPECT_EQ(index.query(Vec2(0.7, 0)), 0);
  EXPECT_FALSE(index.query(Vec2(0.75, 1.2)).has_value());
}

TEST(Circumcenter, RightTriangle) {
  const Vec2 c = circumcenter<double>({0, 0}, {1, 0}, {0, 1});
  EXPECT_NEAR(c.x(), 0.5, 1e-15);
  EXPECT_NEAR(c.y(), 0.5, 1e-15);
}

TEST(Circumcenter, EquilateralMatchesBisectorSolve) {
  const Vec2 p(0, 0), q(2, 0), r(1, std::sqrt(3.0));
  const Vec2 expected = bisector_solution(p, q, r);
  EXPECT_NEAR(expected.x(), 1.0, 1e-14);
  EXPECT_NEAR(expected.y(), 1.0 / std::sqrt(3.0), 1e-14);
  const Vec2 c = circumcenter(p, q, r);
  EXPECT_NEAR(c.x(), expected.x(), 1e-14);
  EXPECT_NEAR(c.y(), expected.y(), 1e-14);
}

TEST(Circumcenter, CollinearThrows) {
  EXPECT_THROW(circumcenter<double>({0, 0}, {1, 1}, {2, 2}), Collinear);
  EXPECT_FALSE(try_circumcenter<double>({0, 0}, {1, 0}, {2, 1e-13}).has_value());
}

TEST(Circumcenter, WorksInLongDouble) {
  using V = Vector2<long double>;
  const V c = circumcenter(V(0, 0), V(1, 0), V(0, 1));
  EXPECT_NEAR(static_cast<double>(c.x()), 0.5, 1e-18);
}

TEST(Circumcenter, EquidistantOnRandomTriangles) {
  Rng rng = make_stream(11);
  std::uniform_real_distribution<double> u(-10, 10);
  int checked = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    const Vec2 p(u(rng), u(rng)), q(u(rng), u(rng)), r(u(rng), u(rng));
    const auto c = try_circumcenter(p, q, r);
    if (!c) continue;
    const double dp = (p - *c).norm(), dq = (q - *c).norm(), dr = (r - *c).norm();
    // Near-degenerate triangles put the center far away; compare relatively.
    EXPECT_NEAR(dq / dp, 1.0, 1e-9);
    EXPECT_NEAR(dr / dp, 1.0, 1e-9);
    ++checked;
  }
  EXPECT_GT(checked, 1900);
}

TEST(Angles, InteriorAngle) {
  EXPECT_DOUBLE_EQ(interior_angle(4), kPi / 2);
  EXPECT_DOUBLE_EQ(interior_angle(3), kPi / 3);
  EXPECT_DOUBLE_EQ(interior_angle(6), 2 * kPi / 3);
  EXPECT_THROW(interior_angle(2), BadK);
}

TEST(Angles, ApexAngle) {
  EXPECT_NEAR(apex_angle(5, 2), kPi / 5, 1e-15);
  EXPECT_NEAR(apex_angle(3, 1), kPi / 3, 1e-15);
  EXPECT_NEAR(apex_angle(15, 6), kPi / 5, 1e-15);
  EXPECT_NEAR(apex_angle(15, 6), apex_angle(5, 2), 1e-12);
  EXPECT_THROW(apex_angle(5, 3), BadSkip);
  EXPECT_THROW(apex_angle(6, 3), BadSkip);
  EXPECT_THROW(apex_angle(5, 0), BadSkip);
}

TEST(Angles, ApexAngleMonotone) {
  for (int k = 3; k <= 60; ++k) {
    for (int d = 2; d <= max_skip(k); ++d) EXPECT_LT(apex_angle(k, d), apex_angle(k, d - 1));
  }
  for (int d = 1; d <= 20; ++d) {
    for (int k = 2 * d + 2; k <= 80; ++k) EXPECT_GT(apex_angle(k, d), apex_angle(k - 1, d));
  }
}

TEST(Angles, ApexAngleMatchesMeasuredTriangle) {
  for (int k = 3; k <= 30; ++k) {
    const auto gon = regpoly::testing::regular_gon(k);
    for (int d = 1; d <= max_skip(k); ++d) {
      EXPECT_NEAR(angle_at(gon[0], gon[d], gon[k - d]), apex_angle(k, d), 1e-12);
    }
  }
}

TEST(PolygonVertex, UnitCircleSquare) {
  const Vec2 v1 = polygon_vertex<double>(Vec2::Zero(), 1.0, 0.0, 4, 1);
  EXPECT_NEAR(v1.x(), 0.0, 1e-15);
  EXPECT_NEAR(v1.y(), 1.0, 1e-15);
  const Vec2 v0 = polygon_vertex<double>(Vec2::Zero(), 1.0, 0.0, 4, 0);
  EXPECT_NEAR(v0.x(), 1.0, 1e-15);
  EXPECT_NEAR(v0.y(), 0.0, 1e-15);
}

TEST(PolygonVertex, ReproducesUnitSquareWithWrappedPhase) {
  const auto square = unit_square();
  const PointIndex index(square, 1e-9);
  const double phase = canonical_phase(-3 * kPi / 4, 4);
  EXPECT_NEAR(phase, kPi / 4, 1e-15);
  std::set<int> hit;
  for (int j = 0; j < 4; ++j) {
    const auto id = index.query(polygon_vertex<double>({0.5, 0.5}, std::sqrt(2.0) / 2, phase, 4, j));
    ASSERT_TRUE(id.has_value());
    hit.insert(*id);
  }
  EXPECT_EQ(hit.size(), 4u);
}

TEST(PolygonVertex, ConsecutiveDistancesEqual) {
  Rng rng = make_stream(3);
  std::uniform_real_distribution<double> u(0, 1);
  for (int trial = 0; trial < 200; ++trial) {
    const int k = 3 + trial % 60;
    const Vec2 c(u(rng) * 10, u(rng) * 10);
    const double r = 0.1 + u(rng);
    const double phase = u(rng) * 2 * kPi;
    const double side = (polygon_vertex(c, r, phase, k, 1) - polygon_vertex(c, r, phase, k, 0)).norm();
    for (int j = 1; j < k; ++j) {
      const double s =
          (polygon_vertex(c, r, phase, k, (j + 1) % k) - polygon_vertex(c, r, phase, k, j)).norm();
      EXPECT_NEAR(s / side, 1.0, 1e-9);
    }
  }
}

TEST(CanonicalPolygon, UnitSquare) {
  const auto pts = unit_square();
  const RegularPolygon p = canonical_polygon(pts, {3, 1, 0, 2});
  EXPECT_EQ(p.k, 4);
  EXPECT_NEAR(p.center.x(), 0.5, 1e-15);
  EXPECT_NEAR(p.center.y(), 0.5, 1e-15);
  EXPECT_NEAR(p.radius, std::sqrt(2.0) / 2, 1e-15);
  EXPECT_NEAR(p.phase, kPi / 4, 1e-15);
  EXPECT_EQ(p.vertex_ids, (std::vector<int>{2, 3, 0, 1}));
  EXPECT_TRUE(satisfies_invariants(p, pts, 1e-9));
}

TEST(CanonicalPolygon, VertexNearZeroAngleStartsTheList) {
  // Vertex 0 sits at angle 0; rounding must not push it to the end.
  const auto gon = regpoly::testing::regular_gon(5, Vec2(0.3, 0.7), 0.2, 0.0);
  const RegularPolygon p = canonical_polygon(gon, {4, 3, 2, 1, 0});
  EXPECT_EQ(p.vertex_ids.front(), 0);
  EXPECT_LT(p.phase, 1e-9);
}

TEST(CanonicalPolygon, OrderIndependent) {
  const auto gon = regpoly::testing::regular_gon(9, Vec2(1, 2), 3, 0.4);
  const RegularPolygon a = canonical_polygon(gon, {0, 1, 2, 3, 4, 5, 6, 7, 8});
  const RegularPolygon b = canonical_polygon(gon, {8, 6, 4, 2, 0, 1, 3, 5, 7});
  EXPECT_EQ(a.center, b.center);
  EXPECT_EQ(a.radius, b.radius);
  EXPECT_EQ(a.phase, b.phase);
  EXPECT_EQ(a.vertex_ids, b.vertex_ids);
}

TEST(Tolerances, DefaultsScaleWithBoundingBox) {
  const PointSet pts{{0, 0}, {3, 4}};
  const Tolerances tol = default_tolerances(pts);
  EXPECT_DOUBLE_EQ(tol.point, 5e-7);
  EXPECT_DOUBLE_EQ(tol.length, 5e-7);
  EXPECT_DOUBLE_EQ(tol.angle, 1e-9);
  Tolerances bad = tol;
  bad.angle = 0;
  EXPECT_THROW(validate(bad), InvalidArgument);
}
