#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "regpoly/geometry.hpp"
#include "regpoly/point_index.hpp"
#include "regpoly/random.hpp"
#include "regpoly/special_table.hpp"

namespace regpoly {

struct DetectorParams {
  double alpha = 0.068;
  /// Boundary between the sweep (k <= k_cut) and the sampler (k >= k_cut).
  /// Zero selects max(3, ceil(n^alpha)).
  int k_cut = 0;
  double sample_multiplier = 8.0;
  std::uint64_t seed = 0;
  Tolerances tol;
  int threads = 1;
  bool alias_sampling = false;
  /// Remembers each sampled ordered triple's classification outcome.
  bool triple_memo = true;
};

/// max(3, ceil(n^alpha)).
int default_k_cut(std::size_t n, double alpha);

/// ceil(c n^2 (ln n)^2), at least 1. Throws InvalidArgument for n < 3 or c <= 0.
std::uint64_t num_samples(std::size_t n, double c);

/// Quantized (center, k, radius, phase) identity of a candidate polygon.
struct DedupKey {
  int k = 0;
  CellKey center;
  std::int64_t radius = 0;
  std::int64_t phase = 0;

  bool operator==(const DedupKey&) const = default;
};

struct DedupKeyHash {
  std::size_t operator()(const DedupKey& key) const noexcept;
};

DedupKey dedup_key(int k, const Vec2& center, double radius, double phase, double tol_point);
DedupKey dedup_key(const CandidateGon& cand, double tol_point);
DedupKey dedup_key(const RegularPolygon& polygon, double tol_point);

struct RunStats {
  std::uint64_t samples_drawn = 0;
  std::uint64_t triples_degenerate = 0;
  std::uint64_t triples_nonspecial = 0;  ///< includes k outside [k_cut, n]
  std::uint64_t candidates_tried = 0;
  std::uint64_t memo_hits = 0;
  std::uint64_t verifications_full = 0;
  std::uint64_t verifications_early_exit = 0;
  std::uint64_t probes_on_failure = 0;
  double tol_angle = 0.0;  ///< effective angle tolerance
  std::vector<std::string> warnings;

  double mean_probes_on_failure() const {
    return verifications_early_exit
               ? static_cast<double>(probes_on_failure) / static_cast<double>(verifications_early_exit)
               : 0.0;
  }
};

struct VerifyOutcome {
  std::optional<RegularPolygon> polygon;  ///< set when every vertex is present
  int probes = 0;

  bool full() const { return polygon.has_value(); }
};

/// Probes the k - 3 unconfirmed vertices of `cand` in uniformly random order,
/// stopping at the first one missing from `index`.
VerifyOutcome verify_candidate(const CandidateGon& cand, const PointIndex& index, Rng& rng);

struct LargeResult {
  std::vector<RegularPolygon> polygons;
  RunStats stats;
};

/// Randomized detection of every regular k-gon with k_cut <= k <= n.
///
/// Sound on every run; complete with a probability governed by the sample
/// multiplier. With threads == 1 the result is a pure function of the seed.
LargeResult detect_large_gons(std::span<const Vec2> points, const DetectorParams& params);

}  // namespace regpoly
