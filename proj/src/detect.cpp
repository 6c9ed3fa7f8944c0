#include "regpoly/detect.hpp"

#include <chrono>
#include <map>

namespace regpoly {

const char* to_string(Source source) {
  switch (source) {
    case Source::Sweep: return "sweep";
    case Source::Sampler: return "sampler";
    case Source::Oracle: return "oracle";
  }
  return "unknown";
}

DetectAllResult detect_all(std::span<const Vec2> points, const DetectorParams& params) {
  using Clock = std::chrono::steady_clock;
  DetectAllResult result;
  result.k_cut = params.k_cut > 0 ? params.k_cut : default_k_cut(points.size(), params.alpha);

  std::map<PolygonIdentity, ResultRecord> merged;

  const auto t0 = Clock::now();
  if (points.size() >= 3) {
    SweepDetector sweep(points, result.k_cut, params.tol);
    for (RegularPolygon& poly : sweep.run()) {
      PolygonIdentity id = identity(poly);
      merged.emplace(std::move(id), ResultRecord{std::move(poly), Source::Sweep});
    }
    result.sweep = sweep.counters();
  }
  const auto t1 = Clock::now();

  DetectorParams large_params = params;
  large_params.k_cut = result.k_cut;
  LargeResult large = detect_large_gons(points, large_params);
  for (RegularPolygon& poly : large.polygons) {
    PolygonIdentity id = identity(poly);
    merged.emplace(std::move(id), ResultRecord{std::move(poly), Source::Sampler});
  }
  result.large = std::move(large.stats);
  const auto t2 = Clock::now();

  result.sweep_seconds = std::chrono::duration<double>(t1 - t0).count();
  result.large_seconds = std::chrono::duration<double>(t2 - t1).count();
  result.records.reserve(merged.size());
  for (auto& [id, rec] : merged) result.records.push_back(std::move(rec));
  return result;
}

}  // namespace regpoly
