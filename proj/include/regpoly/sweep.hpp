#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "regpoly/geometry.hpp"
#include "regpoly/point_index.hpp"

namespace regpoly {

enum class Side : std::uint8_t { PolygonBelow, PolygonAbove };

/// "Possible k-gon above/below" message carried by a directed edge.
///
/// The center and edge length are fixed at origination; both chains of one
/// polygon carry the same keys, so termination is an exact key match.
struct Signal {
  int k = 0;
  Side side = Side::PolygonBelow;
  CellKey center_key;
  std::int64_t edge_len_key = 0;
  Vec2 center = Vec2::Zero();
  double edge_len = 0.0;
  int origin = -1;  ///< vertex where the signal originated
};

/// A signal travelling along the directed edge from -> to.
struct RoutedSignal {
  int from = -1;
  int to = -1;
  Signal signal;
};

struct SweepCounters {
  std::size_t originations = 0;  ///< polygon candidates started (signal pairs)
  std::size_t propagations = 0;
  std::size_t terminations = 0;
  std::size_t discards = 0;
  std::size_t signals = 0;  ///< every signal placed on an edge
};

struct SweepEvent {
  enum class Kind : std::uint8_t { Origination, Termination };
  Kind kind;
  int vertex;
  int k;
};

/// Left-to-right sweep finding every regular k-gon with 3 <= k <= k_cut.
///
/// Vertices are visited in lexicographic (x, y) order. A vertex whose two
/// right-facing edges have equal length and meet at angle pi - 2pi/k starts a
/// pair of signals; intermediate vertices forward them along edges of the same
/// length turning by 2pi/k; the vertex where an "above" and a "below" chain of
/// the same polygon meet closes it.
class SweepDetector {
 public:
  /// Throws DuplicatePoints / BadK.
  SweepDetector(std::span<const Vec2> points, int k_cut, const Tolerances& tol);

  /// Origination event at vertex v: returns the signals emitted (the caller
  /// routes them). Upper edges get PolygonBelow, lower edges PolygonAbove.
  std::vector<RoutedSignal> originate(int v);

  /// Propagation event: the forwarded signal, or nullopt if discarded.
  std::optional<RoutedSignal> propagate(int v, const RoutedSignal& incoming) const;

  /// Termination event: pairs matching above/below signals arriving at v,
  /// removes them from `incoming` and returns the completed polygons.
  std::vector<RegularPolygon> terminate(int v, std::vector<RoutedSignal>& incoming);

  /// Runs the whole sweep once.
  std::vector<RegularPolygon> run();

  std::span<const int> order() const { return order_; }
  int rank(int id) const { return rank_[id]; }
  const SweepCounters& counters() const { return counters_; }
  std::span<const SweepEvent> events() const { return events_; }
  /// Signals still waiting on an edge (zero after run()).
  std::size_t pending_signals() const;

 private:
  std::optional<int> right_neighbour(int v, const Vec2& predicted) const;
  Signal make_signal(int k, Side side, const Vec2& center, double edge_len, int origin) const;

  std::vector<Vec2> points_;
  int k_cut_;
  Tolerances tol_;
  PointIndex index_;
  std::vector<int> order_;
  std::vector<int> rank_;
  std::vector<Eigen::Matrix2d> turn_;  // rotation by pi - 2pi/k
  std::vector<std::vector<RoutedSignal>> inbox_;
  SweepCounters counters_;
  std::vector<SweepEvent> events_;
};

/// All regular k-gons, 3 <= k <= k_cut, whose vertices are input points.
std::vector<RegularPolygon> detect_small_gons(std::span<const Vec2> points, int k_cut,
                                              const Tolerances& tol);

}  // namespace regpoly
