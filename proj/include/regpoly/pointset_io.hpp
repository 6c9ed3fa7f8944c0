#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "regpoly/detect.hpp"
#include "regpoly/geometry.hpp"

namespace regpoly {

struct InstanceMeta {
  std::string name;
  std::uint64_t seed = 0;
  std::string params;
};

struct Instance {
  PointSet points;
  /// Generator-known polygons; empty for loaded files.
  std::vector<RegularPolygon> ground_truth;
  InstanceMeta meta;
};

/// Parses a point file: one "x y" pair per line, '#' starts a comment line.
/// "# name:", "# seed:" and "# params:" comments fill the metadata.
/// Throws ParseError, or DuplicatePoints (with line numbers) when two points
/// lie within `tol_point` (default: 1e-7 x bounding-box diagonal).
Instance parse_points(std::string_view text, std::optional<double> tol_point = std::nullopt);
Instance load_points(const std::filesystem::path& path,
                     std::optional<double> tol_point = std::nullopt);

/// Versioned point file; coordinates use the shortest round-trip form, so
/// parse_points(write_points(x)) reproduces every coordinate exactly.
std::string write_points(const Instance& instance);

enum class ResultFormat { Text, Json, Svg };

/// "text", "json" or "svg"; throws InvalidArgument otherwise.
ResultFormat parse_format(std::string_view name);

/// Serializes results. Text rows are "k cx cy r phase id_0 ... id_{k-1}"
/// with 10 significant digits, sorted by (k, cx, cy). `points` is only used
/// by the svg format; `stats` is only used by the json format.
std::string write_results(std::span<const ResultRecord> results, ResultFormat format,
                          std::span<const Vec2> points = {},
                          std::span<const std::pair<std::string, double>> stats = {});

/// Reads the text result format back (used for ground-truth sidecars).
std::vector<RegularPolygon> parse_results(std::string_view text);

/// Convenience wrapper: each polygon becomes a record with `source`.
std::vector<ResultRecord> as_records(std::span<const RegularPolygon> polygons, Source source);

}  // namespace regpoly
