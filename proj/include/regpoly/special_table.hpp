#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "regpoly/geometry.hpp"

namespace regpoly {

/// Skip d of a k-gon with gcd(d, k) = 1; `angle` = pi (1 - 2d/k).
struct SpecialEntry {
  int k = 0;
  int d = 0;
  double angle = 0.0;
};

/// Apex angle -> (k, d) lookup over every coprime skip for 3 <= k <= k_max.
///
/// Entries are sorted strictly ascending by angle. Each reduced fraction d/k
/// appears once, so an angle identifies at most one (k, d).
class SpecialTable {
 public:
  explicit SpecialTable(int k_max);

  std::span<const SpecialEntry> entries() const { return entries_; }
  int k_max() const { return k_max_; }

  /// Smallest difference between consecutive angles (+inf for a single entry).
  double min_angle_gap() const { return min_gap_; }

  /// Index of the entry whose angle is closest to `angle`.
  std::size_t nearest(double angle) const;

  /// Writes one "k d angle" row per entry.
  void dump(std::ostream& os) const;

 private:
  int k_max_;
  std::vector<SpecialEntry> entries_;
  double min_gap_;
};

inline SpecialTable build_table(int k_max) { return SpecialTable(k_max); }

inline double min_angle_gap(const SpecialTable& table) { return table.min_angle_gap(); }

/// gcd(d, k) == 1; throws BadK / BadSkip outside 1 <= d <= ceil(k/2) - 1.
bool is_special(int k, int d);

/// The unique k-gon a special triangle belongs to.
struct CandidateGon {
  int k = 0;
  int d = 0;
  Vec2 center = Vec2::Zero();
  double radius = 0.0;
  double phase = 0.0;  ///< angle of the apex about `center` (vertex 0)
  /// Apex, vertex at +d, vertex at k - d.
  std::array<int, 3> seed_ids{};
};

/// Classifies the ordered triple (p, q, r) with apex p.
///
/// Returns a candidate when |pq| ~ |pr|, the triangle is not degenerate, and
/// its apex angle matches a table entry within tol.angle. The nearest entry
/// and its two angle-order neighbours are tried nearest first; a match is
/// accepted only if q and r sit within tol.point of the predicted vertices.
std::optional<CandidateGon> classify_triangle(std::span<const Vec2> points,
                                              const std::array<int, 3>& triple,
                                              const SpecialTable& table, const Tolerances& tol);

}  // namespace regpoly
