#pragma once

#include <span>
#include <vector>

#include "regpoly/large_detector.hpp"
#include "regpoly/sweep.hpp"

namespace regpoly {

enum class Source { Sweep, Sampler, Oracle };

const char* to_string(Source source);

struct ResultRecord {
  RegularPolygon polygon;
  Source source = Source::Sweep;
};

struct DetectAllResult {
  std::vector<ResultRecord> records;  ///< sorted by polygon identity
  int k_cut = 3;
  SweepCounters sweep;
  RunStats large;
  double sweep_seconds = 0.0;
  double large_seconds = 0.0;
};

/// Sweep for k <= k_cut, sampler for k >= k_cut, merged without duplicates.
/// A polygon found by both keeps Source::Sweep.
DetectAllResult detect_all(std::span<const Vec2> points, const DetectorParams& params);

}  // namespace regpoly
