#include "regpoly/generate.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "regpoly/point_index.hpp"

namespace regpoly {

namespace {

// Incremental grid used to reject points closer than `sep`.
class SeparationGrid {
 public:
  explicit SeparationGrid(double sep) : sep_(sep) {}

  bool clear_of(const Vec2& p) const {
    const CellKey c = quantize(p, sep_);
    for (std::int64_t dx = -1; dx <= 1; ++dx) {
      for (std::int64_t dy = -1; dy <= 1; ++dy) {
        auto it = cells_.find(CellKey{c.x + dx, c.y + dy});
        if (it == cells_.end()) continue;
        for (const Vec2& q : it->second) {
          if ((q - p).norm() <= sep_) return false;
        }
      }
    }
    return true;
  }

  void insert(const Vec2& p) { cells_[quantize(p, sep_)].push_back(p); }

 private:
  double sep_;
  std::unordered_map<CellKey, std::vector<Vec2>, CellKeyHash> cells_;
};

std::vector<int> divisors_at_least_3(int k) {
  std::vector<int> out;
  for (int d = 3; d <= k; ++d) {
    if (k % d == 0) out.push_back(d);
  }
  return out;
}

}  // namespace

Instance generate(const GenSpec& spec) {
  Rng rng = make_stream(spec.seed, 0x67656eULL);

  // Vertices of the embedded polygons, with a "kept" mask per polygon.
  std::vector<std::vector<Vec2>> verts(spec.embedded.size());
  std::vector<std::vector<bool>> kept(spec.embedded.size());
  Vec2 lo = spec.box_min, hi = spec.box_max;
  for (std::size_t g = 0; g < spec.embedded.size(); ++g) {
    const EmbeddedGon& e = spec.embedded[g];
    if (e.k < 3) throw BadK(e.k);
    if (!(e.radius > 0)) throw InfeasibleSpec("embedded polygon radius must be positive");
    for (int j = 0; j < e.k; ++j) {
      verts[g].push_back(polygon_vertex(e.center, e.radius, e.phase, e.k, j));
      lo = lo.cwiseMin(verts[g].back());
      hi = hi.cwiseMax(verts[g].back());
    }
    const double frac = e.drop_fraction.value_or(spec.drop_fraction);
    if (frac < 0 || frac > 1) throw InfeasibleSpec("drop fraction must lie in [0, 1]");
    const auto drop = static_cast<int>(std::lround(frac * e.k));
    std::vector<int> order(e.k);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    kept[g].assign(e.k, true);
    for (int i = 0; i < drop; ++i) kept[g][order[i]] = false;
  }

  const double diag = std::max((hi - lo).norm(), 1e-300);
  const double sep = 4.0 * 1e-7 * diag;
  SeparationGrid grid(sep);

  // Original order: embedded vertices first, then noise.
  PointSet raw;
  std::vector<std::vector<int>> raw_id(spec.embedded.size());
  for (std::size_t g = 0; g < verts.size(); ++g) {
    raw_id[g].assign(verts[g].size(), -1);
    for (std::size_t j = 0; j < verts[g].size(); ++j) {
      if (!kept[g][j]) continue;
      if (!grid.clear_of(verts[g][j])) {
        throw InfeasibleSpec("embedded polygons have vertices closer than the separation limit");
      }
      grid.insert(verts[g][j]);
      raw_id[g][j] = static_cast<int>(raw.size());
      raw.push_back(verts[g][j]);
    }
  }

  std::uniform_real_distribution<double> ux(spec.box_min.x(), spec.box_max.x());
  std::uniform_real_distribution<double> uy(spec.box_min.y(), spec.box_max.y());
  constexpr int kMaxAttempts = 1000;
  for (std::size_t i = 0; i < spec.n_noise; ++i) {
    int attempt = 0;
    for (; attempt < kMaxAttempts; ++attempt) {
      const Vec2 p(ux(rng), uy(rng));
      if (grid.clear_of(p)) {
        grid.insert(p);
        raw.push_back(p);
        break;
      }
    }
    if (attempt == kMaxAttempts) throw InfeasibleSpec("could not place noise points");
  }

  std::vector<int> perm(raw.size());  // perm[old] = new id
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);

  Instance inst;
  inst.points.resize(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) inst.points[perm[i]] = raw[i];

  std::map<PolygonIdentity, RegularPolygon> truth;
  for (std::size_t g = 0; g < spec.embedded.size(); ++g) {
    const int k = spec.embedded[g].k;
    for (int sub : divisors_at_least_3(k)) {
      const int step = k / sub;
      for (int offset = 0; offset < step; ++offset) {
        std::vector<int> ids;
        for (int i = 0; i < sub; ++i) {
          const int j = offset + i * step;
          if (raw_id[g][j] < 0) break;
          ids.push_back(perm[raw_id[g][j]]);
        }
        if (static_cast<int>(ids.size()) != sub) continue;
        RegularPolygon poly = canonical_polygon(inst.points, std::move(ids));
        PolygonIdentity id = identity(poly);
        truth.emplace(std::move(id), std::move(poly));
      }
    }
  }
  for (auto& [id, poly] : truth) inst.ground_truth.push_back(std::move(poly));

  inst.meta.name = spec.name.empty() ? "generated" : spec.name;
  inst.meta.seed = spec.seed;
  std::ostringstream params;
  params << "n_noise=" << spec.n_noise << " drop_fraction=" << spec.drop_fraction << " embedded=";
  for (std::size_t g = 0; g < spec.embedded.size(); ++g) params << (g ? "," : "") << spec.embedded[g].k;
  if (spec.embedded.empty()) params << "none";
  inst.meta.params = params.str();
  return inst;
}

std::vector<EmbeddedGon> random_embedded(int count, int k_min, int k_max, Rng& rng,
                                         const Vec2& box_min, const Vec2& box_max) {
  if (k_min < 3 || k_max < k_min) throw InvalidArgument("need 3 <= k_min <= k_max");
  const Vec2 extent = box_max - box_min;
  const double side = std::min(extent.x(), extent.y());
  std::uniform_int_distribution<int> pick_k(k_min, k_max);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::vector<EmbeddedGon> out;
  for (int i = 0; i < count; ++i) {
    EmbeddedGon g;
    g.k = pick_k(rng);
    g.radius = side * (0.08 + 0.3 * unit(rng));
    g.center = Vec2(box_min.x() + g.radius + (extent.x() - 2 * g.radius) * unit(rng),
                    box_min.y() + g.radius + (extent.y() - 2 * g.radius) * unit(rng));
    g.phase = 2.0 * std::numbers::pi * unit(rng);
    out.push_back(g);
  }
  return out;
}

}  // namespace regpoly
