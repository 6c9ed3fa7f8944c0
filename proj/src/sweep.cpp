#include "regpoly/sweep.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <tuple>

namespace regpoly {

SweepDetector::SweepDetector(std::span<const Vec2> points, int k_cut, const Tolerances& tol)
    : points_(points.begin(), points.end()),
      k_cut_(k_cut),
      tol_(tol),
      index_(points, tol.point) {
  if (k_cut < 3) throw BadK(k_cut);
  validate(tol);

  const int n = static_cast<int>(points_.size());
  order_.resize(n);
  std::iota(order_.begin(), order_.end(), 0);
  std::sort(order_.begin(), order_.end(),
            [this](int a, int b) { return lex_less(points_[a], points_[b]); });
  rank_.resize(n);
  for (int i = 0; i < n; ++i) rank_[order_[i]] = i;

  turn_.assign(k_cut_ + 1, Eigen::Matrix2d::Identity());
  for (int k = 3; k <= k_cut_; ++k) turn_[k] = Eigen::Rotation2D<double>(interior_angle(k)).toRotationMatrix();
  inbox_.assign(n, {});
}

std::optional<int> SweepDetector::right_neighbour(int v, const Vec2& predicted) const {
  const auto hit = index_.query(predicted);
  if (!hit || rank_[*hit] <= rank_[v]) return std::nullopt;
  return hit;
}

Signal SweepDetector::make_signal(int k, Side side, const Vec2& center, double edge_len,
                                  int origin) const {
  Signal s;
  s.k = k;
  s.side = side;
  s.center = center;
  s.center_key = quantize(center, tol_.point);
  s.edge_len = edge_len;
  s.edge_len_key = std::llround(edge_len / tol_.length);
  s.origin = origin;
  return s;
}

std::vector<RoutedSignal> SweepDetector::originate(int v) {
  std::vector<RoutedSignal> out;
  const Vec2& pv = points_[v];
  for (std::size_t pos = rank_[v] + 1; pos < order_.size(); ++pos) {
    const int u = order_[pos];
    const Vec2 e = points_[u] - pv;
    const double len = e.norm();
    for (int k = 3; k <= k_cut_; ++k) {
      // Upper partner: the lower edge turned counterclockwise by the interior angle.
      const Vec2 predicted = pv + turn_[k] * e;
      const auto w = right_neighbour(v, predicted);
      if (!w) continue;

      const Vec2 bisector = (e.normalized() + (points_[*w] - pv).normalized()).normalized();
      const Vec2 center = pv + bisector * (len / (2.0 * std::sin(std::numbers::pi / k)));
      out.push_back({v, *w, make_signal(k, Side::PolygonBelow, center, len, v)});
      out.push_back({v, u, make_signal(k, Side::PolygonAbove, center, len, v)});
      ++counters_.originations;
      counters_.signals += 2;
      events_.push_back({SweepEvent::Kind::Origination, v, k});
    }
  }
  return out;
}

std::optional<RoutedSignal> SweepDetector::propagate(int v, const RoutedSignal& incoming) const {
  const Signal& s = incoming.signal;
  // Upper chains run clockwise (polygon below), lower chains counterclockwise.
  const double turn = (s.side == Side::PolygonBelow ? -2.0 : 2.0) * std::numbers::pi / s.k;
  const Vec2 predicted = rotate_about(points_[v], s.center, turn);
  const auto z = right_neighbour(v, predicted);
  if (!z) return std::nullopt;
  return RoutedSignal{v, *z, s};
}

std::vector<RegularPolygon> SweepDetector::terminate(int v, std::vector<RoutedSignal>& incoming) {
  std::vector<RegularPolygon> out;
  if (incoming.size() < 2) return out;

  auto key = [](const RoutedSignal& r) {
    return std::make_tuple(r.signal.k, r.signal.center_key, r.signal.edge_len_key, r.signal.side,
                           r.from);
  };
  std::sort(incoming.begin(), incoming.end(),
            [&](const RoutedSignal& a, const RoutedSignal& b) { return key(a) < key(b); });

  std::vector<bool> used(incoming.size(), false);
  const Vec2& pv = points_[v];
  std::size_t start = 0;
  while (start < incoming.size()) {
    std::size_t end = start + 1;
    auto same_group = [&](const RoutedSignal& a, const RoutedSignal& b) {
      return a.signal.k == b.signal.k && a.signal.center_key == b.signal.center_key &&
             a.signal.edge_len_key == b.signal.edge_len_key;
    };
    while (end < incoming.size() && same_group(incoming[start], incoming[end])) ++end;

    for (std::size_t i = start; i < end; ++i) {
      if (used[i] || incoming[i].signal.side != Side::PolygonBelow) continue;
      for (std::size_t j = start; j < end; ++j) {
        if (used[j] || incoming[j].signal.side != Side::PolygonAbove) continue;
        const Signal& s = incoming[i].signal;
        const double step = 2.0 * std::numbers::pi / s.k;
        // The upper chain's predecessor is one step counterclockwise of v,
        // the lower chain's one step clockwise.
        const Vec2 ccw = rotate_about(pv, s.center, step);
        const Vec2 cw = rotate_about(pv, s.center, -step);
        if ((points_[incoming[i].from] - ccw).norm() > tol_.point ||
            (points_[incoming[j].from] - cw).norm() > tol_.point) {
          continue;
        }

        const Vec2 rel = pv - s.center;
        const double radius = rel.norm();
        const double phase = std::atan2(rel.y(), rel.x());
        std::vector<int> ids;
        ids.reserve(s.k);
        for (int t = 0; t < s.k; ++t) {
          const auto hit = index_.query(polygon_vertex(s.center, radius, phase, s.k, t));
          if (!hit) break;
          ids.push_back(*hit);
        }
        if (static_cast<int>(ids.size()) != s.k) continue;

        used[i] = used[j] = true;
        ++counters_.terminations;
        events_.push_back({SweepEvent::Kind::Termination, v, s.k});
        out.push_back(canonical_polygon(points_, std::move(ids)));
        break;
      }
    }
    start = end;
  }

  std::vector<RoutedSignal> rest;
  rest.reserve(incoming.size());
  for (std::size_t i = 0; i < incoming.size(); ++i) {
    if (!used[i]) rest.push_back(incoming[i]);
  }
  incoming = std::move(rest);
  return out;
}

std::vector<RegularPolygon> SweepDetector::run() {
  std::map<PolygonIdentity, RegularPolygon> found;
  for (const int v : order_) {
    for (RoutedSignal& s : originate(v)) inbox_[s.to].push_back(std::move(s));

    std::vector<RoutedSignal> incoming = std::move(inbox_[v]);
    inbox_[v].clear();
    for (RegularPolygon& poly : terminate(v, incoming)) {
      found.emplace(identity(poly), std::move(poly));
    }
    for (const RoutedSignal& s : incoming) {
      if (auto fwd = propagate(v, s)) {
        ++counters_.propagations;
        ++counters_.signals;
        inbox_[fwd->to].push_back(*fwd);
      } else {
        ++counters_.discards;
      }
    }
  }

  std::vector<RegularPolygon> out;
  out.reserve(found.size());
  for (auto& [id, poly] : found) out.push_back(std::move(poly));
  return out;
}

std::size_t SweepDetector::pending_signals() const {
  std::size_t total = 0;
  for (const auto& box : inbox_) total += box.size();
  return total;
}

std::vector<RegularPolygon> detect_small_gons(std::span<const Vec2> points, int k_cut,
                                              const Tolerances& tol) {
  if (points.size() < 3) {
    // Still validate the input.
    PointIndex check(points, tol.point);
    return {};
  }
  SweepDetector sweep(points, k_cut, tol);
  return sweep.run();
}

}  // namespace regpoly
