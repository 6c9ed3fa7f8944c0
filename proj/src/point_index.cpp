#include "regpoly/point_index.hpp"

#include <cmath>
#include <limits>

namespace regpoly {

namespace {

std::uint64_t mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::size_t CellKeyHash::operator()(const CellKey& c) const noexcept {
  return static_cast<std::size_t>(mix(static_cast<std::uint64_t>(c.x) ^
                                      mix(static_cast<std::uint64_t>(c.y))));
}

CellKey quantize(const Vec2& loc, double cell) {
  return {static_cast<std::int64_t>(std::floor(loc.x() / cell)),
          static_cast<std::int64_t>(std::floor(loc.y() / cell))};
}

PointIndex::PointIndex(std::span<const Vec2> points, double tol_point)
    : points_(points.begin(), points.end()), tol_(tol_point), origin_(Vec2::Zero()) {
  if (!(tol_point > 0) || !std::isfinite(tol_point)) {
    throw InvalidArgument("tol_point must be finite and positive");
  }
  for (const Vec2& p : points_) {
    if (!p.allFinite()) throw InvalidArgument("point coordinates must be finite");
  }
  if (!points_.empty()) {
    origin_ = points_.front();
    for (const Vec2& p : points_) origin_ = origin_.cwiseMin(p);
  }

  heads_.reserve(points_.size() * 2);
  next_.assign(points_.size(), -1);
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (auto hit = nearest(points_[i], static_cast<std::int64_t>(i))) {
      throw DuplicatePoints(*hit, static_cast<int>(i));
    }
    const CellKey key = cell_of(points_[i]);
    auto [it, inserted] = heads_.try_emplace(key, static_cast<int>(i));
    if (!inserted) {
      next_[i] = it->second;
      it->second = static_cast<int>(i);
    }
  }
}

CellKey PointIndex::cell_of(const Vec2& loc) const { return quantize(loc - origin_, tol_); }

std::optional<int> PointIndex::query(const Vec2& loc) const {
  return nearest(loc, std::numeric_limits<std::int64_t>::max());
}

// Only ids below `limit_id` are considered (all of them are inserted during
// construction when this is called).
std::optional<int> PointIndex::nearest(const Vec2& loc, std::int64_t limit_id) const {
  const CellKey c = cell_of(loc);
  const double tol2 = tol_ * tol_;
  int best = -1;
  double best_d2 = std::numeric_limits<double>::infinity();
  for (std::int64_t dx = -1; dx <= 1; ++dx) {
    for (std::int64_t dy = -1; dy <= 1; ++dy) {
      auto it = heads_.find(CellKey{c.x + dx, c.y + dy});
      if (it == heads_.end()) continue;
      for (int id = it->second; id >= 0; id = next_[id]) {
        if (id >= limit_id) continue;
        const double d2 = (points_[id] - loc).squaredNorm();
        if (d2 <= tol2 && d2 < best_d2) {
          best = id;
          best_d2 = d2;
        }
      }
    }
  }
  if (best < 0) return std::nullopt;
  return best;
}

PointIndex build_point_index(std::span<const Vec2> points, const Tolerances& tol) {
  return PointIndex(points, tol.point);
}

}  // namespace regpoly
