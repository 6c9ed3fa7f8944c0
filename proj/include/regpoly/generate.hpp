#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "regpoly/geometry.hpp"
#include "regpoly/pointset_io.hpp"
#include "regpoly/random.hpp"

namespace regpoly {

struct EmbeddedGon {
  int k = 3;
  Vec2 center = Vec2::Zero();
  double radius = 1.0;
  double phase = 0.0;
  /// Overrides GenSpec::drop_fraction for this polygon.
  std::optional<double> drop_fraction;
};

struct GenSpec {
  std::size_t n_noise = 0;
  std::vector<EmbeddedGon> embedded;
  /// round(drop_fraction * k) vertices are removed from each embedded polygon.
  double drop_fraction = 0.0;
  std::uint64_t seed = 0;
  Vec2 box_min = Vec2(0, 0);  ///< noise is uniform in this box
  Vec2 box_max = Vec2(1, 1);
  std::string name;
};

/// Builds an instance with known regular polygons.
///
/// Noise points are resampled until every pair of points is more than
/// 4 x tol_point apart. Ground truth holds each embedded polygon that stays
/// complete after dropping, plus every complete regular sub-polygon (vertex
/// subsets with k' | k, k' >= 3). Ids are shuffled. Throws InfeasibleSpec if
/// the embedded polygons collide or noise cannot be placed.
Instance generate(const GenSpec& spec);

/// `count` polygons with k uniform in [k_min, k_max], fully inside the box.
std::vector<EmbeddedGon> random_embedded(int count, int k_min, int k_max, Rng& rng,
                                         const Vec2& box_min = Vec2(0, 0),
                                         const Vec2& box_max = Vec2(1, 1));

}  // namespace regpoly
