#include <gtest/gtest.h>

#include <unordered_set>

#include "regpoly/detect.hpp"
#include "regpoly/large_detector.hpp"
#include "regpoly/oracle.hpp"
#include "support.hpp"

using namespace regpoly;
using regpoly::testing::identities;
using regpoly::testing::tight;

namespace {

constexpr double kPi = std::numbers::pi;

CandidateGon candidate_for(const PointSet& full_gon, int k, int d, const Vec2& center, double radius,
                           double phase) {
  CandidateGon c;
  c.k = k;
  c.d = d;
  c.center = center;
  c.radius = radius;
  c.phase = phase;
  c.seed_ids = {0, d, k - d};
  (void)full_gon;
  return c;
}

}  // namespace

TEST(NumSamples, FrozenValues) {
  EXPECT_EQ(num_samples(3, 1), 11u);
  EXPECT_EQ(num_samples(100, 1), 212076u);
  EXPECT_EQ(num_samples(4, 1), 31u);
  EXPECT_EQ(num_samples(10, 2), 1061u);
  EXPECT_EQ(num_samples(50, 8), 306079u);
  EXPECT_EQ(num_samples(57, 0.5), 26555u);
  EXPECT_EQ(num_samples(120, 8), 2640393u);
}

TEST(NumSamples, RejectsBadArguments) {
  EXPECT_THROW(num_samples(10, 0), InvalidArgument);
  EXPECT_THROW(num_samples(10, -1), InvalidArgument);
  EXPECT_THROW(num_samples(2, 1), InvalidArgument);
}

TEST(DefaultKCut, FloorsAtThree) {
  EXPECT_EQ(default_k_cut(1000, 0.068), 3);
  EXPECT_EQ(default_k_cut(100, 0.5), 10);
}

TEST(VerifyCandidate, SquareIsOneProbe) {
  const auto sq = regpoly::testing::unit_square();
  const PointIndex index(sq, 1e-9);
  CandidateGon c;
  c.k = 4;
  c.d = 1;
  c.center = Vec2(0.5, 0.5);
  c.radius = std::sqrt(0.5);
  c.phase = std::atan2(-0.5, -0.5);
  c.seed_ids = {0, 1, 3};
  Rng rng = make_stream(0);
  const VerifyOutcome out = verify_candidate(c, index, rng);
  ASSERT_TRUE(out.full());
  EXPECT_EQ(out.probes, 1);
  EXPECT_EQ(identity(*out.polygon), (PolygonIdentity{4, {0, 1, 2, 3}}));
}

TEST(VerifyCandidate, SeedsOnlyTwelveGon) {
  const int k = 12, d = 1;
  const auto gon = regpoly::testing::regular_gon(k);
  const PointSet seeds{gon[0], gon[d], gon[k - d]};
  const PointIndex index(seeds, 1e-9);
  CandidateGon c = candidate_for(gon, k, d, Vec2::Zero(), 1.0, 0.0);
  c.seed_ids = {0, 1, 2};
  Rng rng = make_stream(5);
  double probes = 0;
  const int trials = 10000;
  for (int t = 0; t < trials; ++t) {
    const VerifyOutcome out = verify_candidate(c, index, rng);
    ASSERT_FALSE(out.full());
    probes += out.probes;
  }
  EXPECT_LE(probes / trials, 2.2);
}

TEST(VerifyCandidate, EightGonWithOneHole) {
  const int k = 8, d = 1;
  auto gon = regpoly::testing::regular_gon(k);
  gon[4] = Vec2(5, 5);  // vertex 4 is missing
  const PointIndex index(gon, 1e-9);
  const CandidateGon c = candidate_for(gon, k, d, Vec2::Zero(), 1.0, 0.0);
  Rng rng = make_stream(6);
  std::vector<int> hist(6);
  const int trials = 20000;
  double probes = 0;
  for (int t = 0; t < trials; ++t) {
    const VerifyOutcome out = verify_candidate(c, index, rng);
    ASSERT_FALSE(out.full());
    ASSERT_GE(out.probes, 1);
    ASSERT_LE(out.probes, 5);
    ++hist[out.probes];
    probes += out.probes;
  }
  EXPECT_NEAR(probes / trials, 3.0, 0.05);
  for (int p = 1; p <= 5; ++p) EXPECT_NEAR(hist[p] / double(trials), 0.2, 0.015);
}

TEST(DedupKey, SameVertexSetSameKey) {
  const auto gon = regpoly::testing::regular_gon(7, Vec2(0.3, 0.4), 0.25, 0.1);
  const double tol = 1e-7;
  const DedupKey a = dedup_key(7, Vec2(0.3, 0.4), 0.25, 0.1, tol);
  const DedupKey b = dedup_key(7, Vec2(0.3, 0.4), 0.25, 0.1 + 2 * kPi / 7 * 3, tol);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, dedup_key(canonical_polygon(gon, {0, 1, 2, 3, 4, 5, 6}), tol));
  EXPECT_NE(a, dedup_key(7, Vec2(0.3, 0.4), 0.25, 0.2, tol));
}

TEST(DetectLarge, UnitSquare) {
  DetectorParams params;
  params.k_cut = 3;
  params.tol = tight(1e-9);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    params.seed = seed;
    const LargeResult r = detect_large_gons(regpoly::testing::unit_square(), params);
    ASSERT_EQ(r.polygons.size(), 1u);
    EXPECT_EQ(r.polygons[0].k, 4);
  }
}

TEST(DetectLarge, StatsAreConsistent) {
  const auto inst = regpoly::testing::random_instance(3, 60, 2, 5, 12);
  DetectorParams params;
  params.k_cut = 5;
  params.sample_multiplier = 1;
  params.tol = default_tolerances(inst.points);
  const LargeResult r = detect_large_gons(inst.points, params);
  const RunStats& s = r.stats;
  EXPECT_EQ(s.samples_drawn, num_samples(inst.points.size(), 1));
  EXPECT_EQ(s.samples_drawn, s.triples_degenerate + s.triples_nonspecial + s.candidates_tried);
  EXPECT_EQ(s.candidates_tried, s.memo_hits + s.verifications_full + s.verifications_early_exit);
  EXPECT_EQ(s.verifications_full, r.polygons.size());
}

TEST(DetectLarge, ElevenAndSeventeenGonInNoise) {
  GenSpec spec;
  spec.n_noise = 100;
  spec.embedded.push_back({11, Vec2(0.3, 0.35), 0.2, 0.1, std::nullopt});
  spec.embedded.push_back({17, Vec2(0.65, 0.6), 0.3, 0.4, std::nullopt});
  spec.seed = 2;
  const Instance inst = generate(spec);
  const Tolerances tol = default_tolerances(inst.points);
  const auto truth = regpoly::testing::restrict_k(
      identities(enumerate_all_gons(inst.points, static_cast<int>(inst.points.size()), tol)), 5, 1000);
  ASSERT_EQ(truth.size(), 2u);

  DetectorParams params;
  params.k_cut = 5;
  params.tol = tol;
  int complete = 0;
  const int seeds = 20;
  for (int seed = 0; seed < seeds; ++seed) {
    params.seed = static_cast<std::uint64_t>(seed);
    const auto found = identities(detect_large_gons(inst.points, params).polygons);
    ASSERT_TRUE(regpoly::testing::is_subset(found, truth));
    complete += found == truth;
  }
  EXPECT_GE(complete, 19);
}

TEST(DetectLarge, GenericPointsYieldNothing) {
  Rng rng = make_stream(77);
  std::uniform_real_distribution<double> u(0, 1);
  PointSet pts(60);
  for (auto& p : pts) p = Vec2(u(rng), u(rng));
  DetectorParams params;
  params.k_cut = 3;
  params.tol = default_tolerances(pts);
  const LargeResult r = detect_large_gons(pts, params);
  EXPECT_TRUE(r.polygons.empty());
  EXPECT_TRUE(enumerate_all_gons(pts, 60, params.tol).empty());
  EXPECT_FALSE(r.stats.warnings.empty());  // no isosceles triples at all
}

TEST(DetectLarge, SoundAndDeduplicatedAcrossSeeds) {
  const auto inst = regpoly::testing::random_instance(9, 70, 3, 5, 14, 0.4);
  const Tolerances tol = default_tolerances(inst.points);
  const auto oracle = identities(enumerate_all_gons(inst.points, 70, tol));
  DetectorParams params;
  params.k_cut = 5;
  params.sample_multiplier = 2;
  params.tol = tol;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    params.seed = seed;
    const auto polys = detect_large_gons(inst.points, params).polygons;
    std::set<PolygonIdentity> ids;
    std::unordered_set<DedupKey, DedupKeyHash> keys;
    for (const auto& p : polys) {
      EXPECT_TRUE(satisfies_invariants(p, inst.points, tol.point));
      EXPECT_GE(p.k, 5);
      EXPECT_TRUE(ids.insert(identity(p)).second);
      EXPECT_TRUE(keys.insert(dedup_key(p, tol.point)).second);
    }
    EXPECT_TRUE(regpoly::testing::is_subset(ids, oracle));
  }
}

TEST(DetectLarge, SameSeedIsBitIdentical) {
  const auto inst = regpoly::testing::random_instance(12, 60, 3, 5, 12);
  DetectorParams params;
  params.k_cut = 5;
  params.sample_multiplier = 1;
  params.seed = 1234;
  params.tol = default_tolerances(inst.points);
  const LargeResult a = detect_large_gons(inst.points, params);
  const LargeResult b = detect_large_gons(inst.points, params);
  ASSERT_EQ(a.polygons.size(), b.polygons.size());
  for (std::size_t i = 0; i < a.polygons.size(); ++i) {
    EXPECT_EQ(a.polygons[i].vertex_ids, b.polygons[i].vertex_ids);
    EXPECT_EQ(a.polygons[i].center, b.polygons[i].center);
    EXPECT_EQ(a.polygons[i].phase, b.polygons[i].phase);
  }
  EXPECT_EQ(a.stats.verifications_early_exit, b.stats.verifications_early_exit);
  EXPECT_EQ(a.stats.probes_on_failure, b.stats.probes_on_failure);
}

TEST(DetectLarge, TripleMemoDoesNotChangeResults) {
  const auto inst = regpoly::testing::random_instance(13, 60, 3, 5, 12, 0.3);
  DetectorParams params;
  params.k_cut = 5;
  params.sample_multiplier = 1;
  params.seed = 99;
  params.tol = default_tolerances(inst.points);
  const LargeResult with = detect_large_gons(inst.points, params);
  params.triple_memo = false;
  const LargeResult without = detect_large_gons(inst.points, params);
  EXPECT_EQ(identities(with.polygons), identities(without.polygons));
  EXPECT_EQ(with.stats.samples_drawn, without.stats.samples_drawn);
}

TEST(DetectLarge, ThreadsFindSameSet) {
  const auto inst = regpoly::testing::random_instance(14, 60, 3, 5, 12);
  DetectorParams params;
  params.k_cut = 5;
  params.tol = default_tolerances(inst.points);
  const auto one = identities(detect_large_gons(inst.points, params).polygons);
  params.threads = 4;
  const auto four = identities(detect_large_gons(inst.points, params).polygons);
  EXPECT_EQ(one, four);
  EXPECT_EQ(one, regpoly::testing::restrict_k(identities(inst.ground_truth), 5, 1000));
}

TEST(DetectLarge, AliasSamplingFindsSameSet) {
  const auto inst = regpoly::testing::random_instance(15, 50, 2, 5, 10);
  DetectorParams params;
  params.k_cut = 5;
  params.tol = default_tolerances(inst.points);
  params.alias_sampling = true;
  EXPECT_EQ(identities(detect_large_gons(inst.points, params).polygons),
            regpoly::testing::restrict_k(identities(inst.ground_truth), 5, 1000));
}

TEST(DetectLarge, WarnsWhenAngleToleranceTooCoarse) {
  DetectorParams params;
  params.k_cut = 3;
  params.tol = tight(1e-9);
  params.tol.angle = 0.5;
  const LargeResult r = detect_large_gons(regpoly::testing::regular_gon(6), params);
  EXPECT_FALSE(r.stats.warnings.empty());
  EXPECT_LT(r.stats.tol_angle, 0.5);
}

TEST(DetectAll, SquareOnceDespiteDoubleCoverage) {
  DetectorParams params;
  params.k_cut = 4;
  params.tol = tight(1e-9);
  const DetectAllResult r = detect_all(regpoly::testing::unit_square(), params);
  ASSERT_EQ(r.records.size(), 1u);
  EXPECT_EQ(r.records[0].source, Source::Sweep);
  EXPECT_EQ(r.k_cut, 4);
}

TEST(DetectAll, CompositeMatchesOracle) {
  GenSpec spec;
  spec.n_noise = 40;
  spec.embedded.push_back({3, Vec2(0.2, 0.2), 0.1, 0.3, std::nullopt});
  spec.embedded.push_back({6, Vec2(0.7, 0.3), 0.15, 0.0, std::nullopt});
  spec.embedded.push_back({9, Vec2(0.4, 0.7), 0.2, 0.5, std::nullopt});
  spec.embedded.push_back({8, Vec2(0.75, 0.75), 0.15, 0.2, 0.25});
  spec.seed = 5;
  const Instance inst = generate(spec);
  DetectorParams params;
  params.k_cut = 6;
  params.tol = default_tolerances(inst.points);
  std::vector<RegularPolygon> polys;
  for (const auto& rec : detect_all(inst.points, params).records) polys.push_back(rec.polygon);
  const auto oracle = identities(enumerate_all_gons(inst.points, static_cast<int>(inst.points.size()), params.tol));
  EXPECT_EQ(identities(polys), oracle);
  EXPECT_EQ(oracle, identities(inst.ground_truth));
}

TEST(DetectAll, EmptyForGenericPoints) {
  Rng rng = make_stream(8);
  std::uniform_real_distribution<double> u(0, 1);
  PointSet pts(40);
  for (auto& p : pts) p = Vec2(u(rng), u(rng));
  DetectorParams params;
  params.tol = default_tolerances(pts);
  EXPECT_TRUE(detect_all(pts, params).records.empty());
}
