#include "regpoly/iso_sampler.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace regpoly {

AliasTable::AliasTable(std::span<const std::uint64_t> weights) {
  const std::size_t n = weights.size();
  if (n == 0) return;
  long double total = 0;
  for (auto w : weights) total += static_cast<long double>(w);

  prob_.assign(n, 0.0);
  alias_.assign(n, 0);
  std::vector<double> scaled(n);
  std::vector<std::uint32_t> small, large;
  for (std::size_t i = 0; i < n; ++i) {
    scaled[i] = static_cast<double>(static_cast<long double>(weights[i]) * n / total);
    (scaled[i] < 1.0 ? small : large).push_back(static_cast<std::uint32_t>(i));
  }
  while (!small.empty() && !large.empty()) {
    const auto s = small.back();
    small.pop_back();
    const auto l = large.back();
    prob_[s] = scaled[s];
    alias_[s] = l;
    scaled[l] -= 1.0 - scaled[s];
    if (scaled[l] < 1.0) {
      large.pop_back();
      small.push_back(l);
    }
  }
  for (auto i : large) prob_[i] = 1.0;
  for (auto i : small) prob_[i] = 1.0;  // leftovers from rounding
}

std::size_t AliasTable::sample(Rng& rng) const {
  std::uniform_int_distribution<std::size_t> column(0, prob_.size() - 1);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  const std::size_t i = column(rng);
  return coin(rng) < prob_[i] ? i : alias_[i];
}

BucketIndex::BucketIndex(std::vector<Bucket> buckets) : buckets_(std::move(buckets)) {
  cum_.reserve(buckets_.size());
  std::uint64_t acc = 0;
  for (const Bucket& b : buckets_) {
    const std::uint64_t m = b.edges.size();
    acc += m * (m - 1) / 2;
    cum_.push_back(acc);
  }
}

void BucketIndex::use_alias(bool on) {
  if (on && alias_.empty() && !buckets_.empty()) {
    std::vector<std::uint64_t> w(buckets_.size());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = cum_[i] - (i ? cum_[i - 1] : 0);
    alias_ = AliasTable(w);
  }
  selection_ = on ? Selection::Alias : Selection::PrefixSum;
}

std::uint64_t BucketIndex::sample_ordinal(Rng& rng) const {
  if (buckets_.empty()) throw NoIsosceles();
  if (selection_ == Selection::Alias) {
    const std::size_t b = alias_.sample(rng);
    const std::uint64_t m = buckets_[b].edges.size();
    std::uniform_int_distribution<std::uint64_t> offset(0, m * (m - 1) - 1);
    return 2 * (b ? cum_[b - 1] : 0) + offset(rng);
  }
  std::uniform_int_distribution<std::uint64_t> pick(0, 2 * cum_.back() - 1);
  return pick(rng);
}

SampledTriple BucketIndex::triple_at(std::uint64_t ordinal) const {
  // Bucket b owns ordinals [2 cum[b-1], 2 cum[b]).
  const auto b = static_cast<std::size_t>(
      std::upper_bound(cum_.begin(), cum_.end(), ordinal / 2) - cum_.begin());
  if (b == buckets_.size()) throw InvalidArgument("triple ordinal out of range");
  const Bucket& bucket = buckets_[b];
  const std::uint64_t m = bucket.edges.size();
  const std::uint64_t offset = ordinal - 2 * (b ? cum_[b - 1] : 0);
  const std::uint64_t i = offset / (m - 1);
  std::uint64_t j = offset % (m - 1);
  if (j >= i) ++j;

  SampledTriple t;
  t.p = bucket.apex;
  t.q = bucket.edges[i];
  t.r = bucket.edges[j];
  t.ordinal = ordinal;
  return t;
}

BucketIndex build_buckets(std::span<const Vec2> points, const Tolerances& tol) {
  const std::size_t n = points.size();
  std::vector<Bucket> buckets;
  std::vector<std::pair<double, int>> dist;
  dist.reserve(n);

  for (std::size_t p = 0; p < n; ++p) {
    dist.clear();
    for (std::size_t q = 0; q < n; ++q) {
      if (q != p) dist.emplace_back((points[q] - points[p]).norm(), static_cast<int>(q));
    }
    std::sort(dist.begin(), dist.end());

    // Runs of consecutive lengths with gaps <= tol_len, cut at a 2 tol_len span.
    std::size_t start = 0;
    while (start < dist.size()) {
      std::size_t end = start + 1;
      while (end < dist.size() && dist[end].first - dist[end - 1].first <= tol.length &&
             dist[end].first - dist[start].first <= 2.0 * tol.length) {
        ++end;
      }
      if (end - start >= 2) {
        Bucket b;
        b.apex = static_cast<int>(p);
        b.length = dist[start].first;
        b.len_key = std::llround(b.length / tol.length);
        b.edges.reserve(end - start);
        for (std::size_t i = start; i < end; ++i) b.edges.push_back(dist[i].second);
        buckets.push_back(std::move(b));
      }
      start = end;
    }
  }
  if (buckets.empty()) throw NoIsosceles();
  return BucketIndex(std::move(buckets));
}

}  // namespace regpoly
