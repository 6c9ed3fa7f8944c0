#include "regpoly/large_detector.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <mutex>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "regpoly/iso_sampler.hpp"

namespace regpoly {

int default_k_cut(std::size_t n, double alpha) {
  if (n < 1) return 3;
  const double cut = std::ceil(std::pow(static_cast<double>(n), alpha));
  return std::max(3, static_cast<int>(cut));
}

std::uint64_t num_samples(std::size_t n, double c) {
  if (n < 3) throw InvalidArgument("num_samples needs n >= 3");
  if (!(c > 0) || !std::isfinite(c)) throw InvalidArgument("sample multiplier must be positive");
  const double nn = static_cast<double>(n);
  const double ln = std::log(nn);
  const double count = std::ceil(c * nn * nn * ln * ln);
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(count));
}

std::size_t DedupKeyHash::operator()(const DedupKey& key) const noexcept {
  std::size_t h = CellKeyHash{}(key.center);
  auto combine = [&h](std::uint64_t v) {
    h ^= static_cast<std::size_t>(v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
  };
  combine(static_cast<std::uint64_t>(key.k));
  combine(static_cast<std::uint64_t>(key.radius));
  combine(static_cast<std::uint64_t>(key.phase));
  return h;
}

DedupKey dedup_key(int k, const Vec2& center, double radius, double phase, double tol_point) {
  DedupKey key;
  key.k = k;
  // Rounded rather than floored: centers of exactly placed polygons tend to
  // sit on grid lines, where floor flips between neighbouring cells.
  key.center = CellKey{std::llround(center.x() / tol_point), std::llround(center.y() / tol_point)};
  key.radius = std::llround(radius / tol_point);
  // Phase is quantized as arc length so its grid is also tol_point.
  const double period = 2.0 * std::numbers::pi / k;
  const std::int64_t steps = std::llround(period * radius / tol_point);
  key.phase = std::llround(canonical_phase(phase, k) * radius / tol_point);
  if (steps > 0) key.phase %= steps;
  return key;
}

DedupKey dedup_key(const CandidateGon& cand, double tol_point) {
  return dedup_key(cand.k, cand.center, cand.radius, cand.phase, tol_point);
}

DedupKey dedup_key(const RegularPolygon& polygon, double tol_point) {
  return dedup_key(polygon.k, polygon.center, polygon.radius, polygon.phase, tol_point);
}

VerifyOutcome verify_candidate(const CandidateGon& cand, const PointIndex& index, Rng& rng) {
  const int k = cand.k;
  const int d = cand.d;
  const int unconfirmed = k - 3;
  // Position t of the unconfirmed list -> vertex number, skipping 0, d, k - d.
  auto vertex_of = [&](int t) {
    int j = t + 1;
    if (j >= d) ++j;
    if (j >= k - d) ++j;
    return j;
  };

  std::vector<int> ids{cand.seed_ids.begin(), cand.seed_ids.end()};
  ids.reserve(k);
  // Lazy Fisher-Yates: only displaced slots are stored.
  std::unordered_map<int, int> displaced;
  auto slot = [&](int i) {
    auto it = displaced.find(i);
    return it == displaced.end() ? i : it->second;
  };

  VerifyOutcome out;
  for (int t = 0; t < unconfirmed; ++t) {
    std::uniform_int_distribution<int> pick(t, unconfirmed - 1);
    const int s = pick(rng);
    const int chosen = slot(s);
    if (s != t) displaced[s] = slot(t);

    ++out.probes;
    const Vec2 predicted = polygon_vertex(cand.center, cand.radius, cand.phase, k, vertex_of(chosen));
    const auto hit = index.query(predicted);
    if (!hit) return out;
    ids.push_back(*hit);
  }

  std::vector<int> sorted = ids;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return out;
  out.polygon = canonical_polygon(index.points(), std::move(ids));
  return out;
}

namespace {

constexpr std::uint8_t kUnknown = 0;
constexpr std::uint8_t kDegenerate = 1;
constexpr std::uint8_t kNonspecial = 2;
constexpr std::uint8_t kResolved = 3;

constexpr std::uint64_t kTripleMemoLimit = std::uint64_t{1} << 26;

}  // namespace

LargeResult detect_large_gons(std::span<const Vec2> points, const DetectorParams& params) {
  validate(params.tol);
  if (params.threads < 1) throw InvalidArgument("threads must be >= 1");
  if (!(params.sample_multiplier > 0)) throw InvalidArgument("sample multiplier must be positive");

  LargeResult result;
  const std::size_t n = points.size();
  const PointIndex index(points, params.tol.point);
  if (n < 3) return result;

  const int k_cut = params.k_cut > 0 ? params.k_cut : default_k_cut(n, params.alpha);
  if (k_cut < 3) throw BadK(k_cut);
  const int k_max = static_cast<int>(n);
  if (k_cut > k_max) return result;

  std::optional<BucketIndex> buckets;
  try {
    buckets.emplace(build_buckets(points, params.tol));
  } catch (const NoIsosceles&) {
    result.stats.warnings.emplace_back("no isosceles triples; nothing to sample");
    return result;
  }
  if (params.alias_sampling) buckets->use_alias(true);

  const SpecialTable table(std::max(3, k_max));
  const double gap = table.min_angle_gap();
  Tolerances tol = params.tol;
  if (std::isfinite(gap)) {
    if (tol.angle >= gap / 2) {
      result.stats.warnings.emplace_back("angle tolerance exceeds half the special-table gap; clamped");
    }
    tol.angle = std::min(tol.angle, gap / 4);
    if (gap / 4 < 1e-12) {
      result.stats.warnings.emplace_back("special-table angle gap is below measurement noise");
    }
  }
  result.stats.tol_angle = tol.angle;

  const std::uint64_t total = num_samples(n, params.sample_multiplier);
  const std::uint64_t triples = count_isosceles_triples(*buckets);
  std::vector<std::atomic<std::uint8_t>> triple_memo(
      params.triple_memo && triples <= kTripleMemoLimit ? triples : 0);

  const bool shared = params.threads > 1;
  std::mutex mutex;
  std::unordered_set<DedupKey, DedupKeyHash> seen;
  std::map<PolygonIdentity, RegularPolygon> found;

  auto worker = [&](int w, std::uint64_t count, RunStats& stats) {
    Rng rng = make_stream(params.seed, static_cast<std::uint64_t>(w));
    for (std::uint64_t s = 0; s < count; ++s) {
      const std::uint64_t ordinal = buckets->sample_ordinal(rng);
      ++stats.samples_drawn;

      // Repeated triples are settled by the memo before decoding them.
      std::atomic<std::uint8_t>* memo =
          triple_memo.empty() ? nullptr : &triple_memo[static_cast<std::size_t>(ordinal)];
      switch (memo ? memo->load(std::memory_order_acquire) : kUnknown) {
        case kDegenerate: ++stats.triples_degenerate; continue;
        case kNonspecial: ++stats.triples_nonspecial; continue;
        case kResolved:
          ++stats.candidates_tried;
          ++stats.memo_hits;
          continue;
        default: break;
      }
      const SampledTriple t = buckets->triple_at(ordinal);

      if (!try_circumcenter(points[t.p], points[t.q], points[t.r])) {
        ++stats.triples_degenerate;
        if (memo) memo->store(kDegenerate, std::memory_order_release);
        continue;
      }
      const auto cand = classify_triangle(points, {t.p, t.q, t.r}, table, tol);
      if (!cand || cand->k < k_cut || cand->k > k_max) {
        ++stats.triples_nonspecial;
        if (memo) memo->store(kNonspecial, std::memory_order_release);
        continue;
      }

      ++stats.candidates_tried;
      const DedupKey key = dedup_key(*cand, tol.point);
      bool claimed;
      if (shared) {
        std::lock_guard lock(mutex);
        claimed = seen.insert(key).second;
      } else {
        claimed = seen.insert(key).second;
      }
      if (!claimed) {
        ++stats.memo_hits;
        if (memo) memo->store(kResolved, std::memory_order_release);
        continue;
      }

      VerifyOutcome outcome = verify_candidate(*cand, index, rng);
      if (outcome.full()) {
        ++stats.verifications_full;
        PolygonIdentity id = identity(*outcome.polygon);
        if (shared) {
          std::lock_guard lock(mutex);
          found.emplace(std::move(id), std::move(*outcome.polygon));
        } else {
          found.emplace(std::move(id), std::move(*outcome.polygon));
        }
      } else {
        ++stats.verifications_early_exit;
        stats.probes_on_failure += static_cast<std::uint64_t>(outcome.probes);
      }
      if (memo) memo->store(kResolved, std::memory_order_release);
    }
  };

  std::vector<RunStats> per_worker(params.threads);
  if (!shared) {
    worker(0, total, per_worker[0]);
  } else {
    std::vector<std::jthread> pool;
    const auto threads = static_cast<std::uint64_t>(params.threads);
    for (int w = 0; w < params.threads; ++w) {
      const std::uint64_t share = total / threads + (static_cast<std::uint64_t>(w) < total % threads);
      pool.emplace_back(worker, w, share, std::ref(per_worker[w]));
    }
  }

  RunStats& stats = result.stats;
  for (const RunStats& s : per_worker) {
    stats.samples_drawn += s.samples_drawn;
    stats.triples_degenerate += s.triples_degenerate;
    stats.triples_nonspecial += s.triples_nonspecial;
    stats.candidates_tried += s.candidates_tried;
    stats.memo_hits += s.memo_hits;
    stats.verifications_full += s.verifications_full;
    stats.verifications_early_exit += s.verifications_early_exit;
    stats.probes_on_failure += s.probes_on_failure;
  }
  result.polygons.reserve(found.size());
  for (auto& [id, poly] : found) result.polygons.push_back(std::move(poly));
  return result;
}

}  // namespace regpoly
