#pragma once

// Fixtures shared by the unit and acceptance suites.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <vector>

#include "regpoly/generate.hpp"
#include "regpoly/geometry.hpp"
#include "regpoly/random.hpp"

namespace regpoly::testing {

inline PointSet unit_square() { return {{0, 0}, {1, 0}, {1, 1}, {0, 1}}; }

inline PointSet regular_gon(int k, const Vec2& center = Vec2::Zero(), double radius = 1.0,
                            double phase = 0.0) {
  PointSet pts;
  for (int j = 0; j < k; ++j) pts.push_back(polygon_vertex(center, radius, phase, k, j));
  return pts;
}

inline Tolerances tight(double point = 1e-7) {
  Tolerances tol;
  tol.point = point;
  tol.length = point;
  tol.angle = 1e-9;
  return tol;
}

inline std::set<PolygonIdentity> identities(const std::vector<RegularPolygon>& polys) {
  std::set<PolygonIdentity> out;
  for (const auto& p : polys) out.insert(identity(p));
  return out;
}

inline std::set<PolygonIdentity> restrict_k(const std::set<PolygonIdentity>& ids, int k_lo,
                                            int k_hi) {
  std::set<PolygonIdentity> out;
  for (const auto& id : ids) {
    if (id.k >= k_lo && id.k <= k_hi) out.insert(id);
  }
  return out;
}

inline bool is_subset(const std::set<PolygonIdentity>& a, const std::set<PolygonIdentity>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

/// Random instance: `gons` embedded polygons with k in [k_min, k_max], noise up
/// to `n_total` points, optionally some partial polygons. Retries until the
/// generator accepts the spec.
inline Instance random_instance(std::uint64_t seed, int n_total, int gons, int k_min, int k_max,
                                double partial_probability = 0.0) {
  Rng rng = make_stream(seed, 99);
  for (int attempt = 0;; ++attempt) {
    GenSpec spec;
    spec.seed = seed * 1000 + attempt;
    spec.embedded = random_embedded(gons, k_min, k_max, rng);
    std::uniform_real_distribution<double> unit(0, 1);
    int embedded_points = 0;
    for (auto& g : spec.embedded) {
      if (unit(rng) < partial_probability) g.drop_fraction = 1.0 / g.k;
      embedded_points += g.k;
    }
    spec.n_noise = static_cast<std::size_t>(std::max(0, n_total - embedded_points));
    try {
      return generate(spec);
    } catch (const InfeasibleSpec&) {
      if (attempt > 50) throw;
    }
  }
}

/// Pearson statistic against a uniform expectation.
inline double chi_square(const std::vector<std::uint64_t>& observed, double expected) {
  double stat = 0;
  for (auto o : observed) {
    const double d = static_cast<double>(o) - expected;
    stat += d * d / expected;
  }
  return stat;
}

}  // namespace regpoly::testing
