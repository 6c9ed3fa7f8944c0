#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "regpoly/geometry.hpp"
#include "regpoly/random.hpp"

namespace regpoly {

/// Edges of (approximately) one length incident to `apex`: the set e(p, l).
struct Bucket {
  int apex = 0;
  std::int64_t len_key = 0;  ///< round(length / tol_len)
  double length = 0.0;       ///< shortest edge length in the bucket
  std::vector<int> edges;    ///< far endpoints, at least two
};

/// An ordered isosceles triple (p, q, r), |pq| ~ |pr|, together with its
/// position in [0, |I|) under the bucket/pair enumeration.
struct SampledTriple {
  int p = 0;
  int q = 0;
  int r = 0;
  std::uint64_t ordinal = 0;
};

/// Walker/Vose alias table over integer weights.
class AliasTable {
 public:
  AliasTable() = default;
  explicit AliasTable(std::span<const std::uint64_t> weights);

  std::size_t sample(Rng& rng) const;
  bool empty() const { return prob_.empty(); }

 private:
  std::vector<double> prob_;
  std::vector<std::uint32_t> alias_;
};

/// Non-singleton length buckets with prefix sums of C(|b|, 2), supporting
/// uniform sampling of ordered isosceles triples.
class BucketIndex {
 public:
  enum class Selection { PrefixSum, Alias };

  explicit BucketIndex(std::vector<Bucket> buckets);

  std::span<const Bucket> buckets() const { return buckets_; }
  /// cum_weights()[i] = sum of C(|b_j|, 2) for j <= i.
  std::span<const std::uint64_t> cum_weights() const { return cum_; }
  std::uint64_t total_pairs() const { return cum_.empty() ? 0 : cum_.back(); }

  /// Switches bucket selection to an alias table (O(1) per draw).
  void use_alias(bool on);
  Selection selection() const { return selection_; }

  /// Uniform over all ordered isosceles triples. Throws NoIsosceles if empty.
  SampledTriple sample(Rng& rng) const { return triple_at(sample_ordinal(rng)); }

  /// Uniform ordinal in [0, |I|) without decoding it.
  std::uint64_t sample_ordinal(Rng& rng) const;

  /// The ordered triple with the given ordinal: within a bucket of size m,
  /// offset i (m - 1) + j picks q = edges[i] and r = the j-th other edge.
  SampledTriple triple_at(std::uint64_t ordinal) const;

 private:
  std::vector<Bucket> buckets_;
  std::vector<std::uint64_t> cum_;
  AliasTable alias_;
  Selection selection_ = Selection::PrefixSum;
};

/// Groups all n(n-1) directed edges by (apex, length). Throws NoIsosceles when
/// no apex has two edges of equal length.
BucketIndex build_buckets(std::span<const Vec2> points, const Tolerances& tol);

/// |I| = sum over buckets of 2 C(|b|, 2).
inline std::uint64_t count_isosceles_triples(const BucketIndex& index) {
  return 2 * index.total_pairs();
}

inline std::array<int, 3> sample_triple(const BucketIndex& index, Rng& rng) {
  const SampledTriple t = index.sample(rng);
  return {t.p, t.q, t.r};
}

}  // namespace regpoly
