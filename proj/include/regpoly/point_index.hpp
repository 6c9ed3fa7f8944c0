#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "regpoly/geometry.hpp"

namespace regpoly {

/// Integer grid cell.
struct CellKey {
  std::int64_t x = 0;
  std::int64_t y = 0;

  bool operator==(const CellKey&) const = default;
  auto operator<=>(const CellKey&) const = default;
};

struct CellKeyHash {
  std::size_t operator()(const CellKey& c) const noexcept;
};

/// Cell of `loc` on a grid of spacing `cell` anchored at the origin.
CellKey quantize(const Vec2& loc, double cell);

/// Hash grid over the input points with cell size tol_point.
///
/// A lookup scans the cell of the query and its 8 neighbours, so every point
/// within tol_point of the query is seen. Read-only after construction.
class PointIndex {
 public:
  /// Throws DuplicatePoints if two inputs lie within `tol_point`.
  PointIndex(std::span<const Vec2> points, double tol_point);

  /// Nearest indexed point within tol_point of `loc`.
  std::optional<int> query(const Vec2& loc) const;

  std::span<const Vec2> points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  double tolerance() const { return tol_; }

 private:
  CellKey cell_of(const Vec2& loc) const;
  std::optional<int> nearest(const Vec2& loc, std::int64_t limit_id) const;

  std::vector<Vec2> points_;
  double tol_;
  Vec2 origin_;
  std::unordered_map<CellKey, int, CellKeyHash> heads_;
  std::vector<int> next_;
};

PointIndex build_point_index(std::span<const Vec2> points, const Tolerances& tol);

inline std::optional<int> query_point(const PointIndex& index, const Vec2& loc) {
  return index.query(loc);
}

}  // namespace regpoly
