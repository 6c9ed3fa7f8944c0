#include "regpoly/pointset_io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "regpoly/point_index.hpp"

namespace regpoly {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

template <typename T>
std::optional<T> parse_number(std::string_view token) {
  T value{};
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) return std::nullopt;
  return value;
}

std::string shortest(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string sig10(double v) {
  if (v == 0.0) v = 0.0;  // no "-0"
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

// Iterates lines with 1-based numbers.
template <typename F>
void for_each_line(std::string_view text, F&& f) {
  int number = 0;
  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    f(++number, line);
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
}

std::vector<ResultRecord> sorted_records(std::span<const ResultRecord> results) {
  std::vector<ResultRecord> sorted(results.begin(), results.end());
  std::sort(sorted.begin(), sorted.end(), [](const ResultRecord& a, const ResultRecord& b) {
    const RegularPolygon& x = a.polygon;
    const RegularPolygon& y = b.polygon;
    return std::tie(x.k, x.center.x(), x.center.y(), x.radius, x.phase, x.vertex_ids) <
           std::tie(y.k, y.center.x(), y.center.y(), y.radius, y.phase, y.vertex_ids);
  });
  return sorted;
}

std::string write_text(std::span<const ResultRecord> results) {
  std::string out = "# regpoly-results v1\n";
  for (const ResultRecord& rec : sorted_records(results)) {
    const RegularPolygon& p = rec.polygon;
    out += std::to_string(p.k);
    for (double v : {p.center.x(), p.center.y(), p.radius, p.phase}) {
      out += ' ';
      out += sig10(v);
    }
    for (int id : p.vertex_ids) {
      out += ' ';
      out += std::to_string(id);
    }
    out += '\n';
  }
  return out;
}

std::string write_json(std::span<const ResultRecord> results,
                       std::span<const std::pair<std::string, double>> stats) {
  nlohmann::ordered_json doc;
  doc["format"] = "regpoly-results";
  doc["version"] = 1;
  auto& polys = doc["polygons"] = nlohmann::ordered_json::array();
  for (const ResultRecord& rec : sorted_records(results)) {
    const RegularPolygon& p = rec.polygon;
    polys.push_back({{"k", p.k},
                     {"center", {p.center.x(), p.center.y()}},
                     {"radius", p.radius},
                     {"phase", p.phase},
                     {"vertex_ids", p.vertex_ids},
                     {"source", to_string(rec.source)}});
  }
  if (!stats.empty()) {
    auto& s = doc["stats"] = nlohmann::ordered_json::object();
    for (const auto& [name, value] : stats) s[name] = value;
  }
  return doc.dump(2) + "\n";
}

std::string write_svg(std::span<const ResultRecord> results, std::span<const Vec2> points) {
  Vec2 lo(0, 0), hi(1, 1);
  bool first = true;
  auto extend = [&](const Vec2& p) {
    if (first) {
      lo = hi = p;
      first = false;
    } else {
      lo = lo.cwiseMin(p);
      hi = hi.cwiseMax(p);
    }
  };
  for (const Vec2& p : points) extend(p);
  for (const ResultRecord& rec : results) {
    const auto& p = rec.polygon;
    extend(p.center - Vec2::Constant(p.radius));
    extend(p.center + Vec2::Constant(p.radius));
  }
  const double span = std::max({hi.x() - lo.x(), hi.y() - lo.y(), 1e-12});
  const double margin = 0.05 * span;
  const double size = span + 2 * margin;
  // SVG y grows downwards.
  auto sx = [&](double x) { return sig10(x - lo.x() + margin); };
  auto sy = [&](double y) { return sig10(hi.y() - y + margin); };

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<!-- regpoly-results v1 -->\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" viewBox=\"0 0 "
     << sig10(size) << ' ' << sig10(size) << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  const double stroke = size / 400;
  for (const ResultRecord& rec : sorted_records(results)) {
    const RegularPolygon& p = rec.polygon;
    const int hue = (p.k * 47) % 360;
    os << "<path fill=\"none\" stroke=\"hsl(" << hue << ",70%,40%)\" stroke-width=\"" << sig10(stroke)
       << "\" d=\"";
    for (int j = 0; j < p.k; ++j) {
      const Vec2 v = polygon_vertex(p.center, p.radius, p.phase, p.k, j);
      os << (j ? " L " : "M ") << sx(v.x()) << ' ' << sy(v.y());
    }
    os << " Z\"><title>k=" << p.k << "</title></path>\n";
  }
  const double dot = size / 250;
  for (const Vec2& p : points) {
    os << "<circle cx=\"" << sx(p.x()) << "\" cy=\"" << sy(p.y()) << "\" r=\"" << sig10(dot)
       << "\" fill=\"black\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace

Instance parse_points(std::string_view text, std::optional<double> tol_point) {
  Instance inst;
  std::vector<int> lines;
  for_each_line(text, [&](int number, std::string_view raw) {
    const std::string_view line = trim(raw);
    if (line.empty()) return;
    if (line.front() == '#') {
      const std::string_view body = trim(line.substr(1));
      auto field = [&](std::string_view key) -> std::optional<std::string_view> {
        if (body.substr(0, key.size()) != key) return std::nullopt;
        return trim(body.substr(key.size()));
      };
      if (auto v = field("name:")) inst.meta.name = std::string(*v);
      if (auto v = field("params:")) inst.meta.params = std::string(*v);
      if (auto v = field("seed:")) {
        if (auto s = parse_number<std::uint64_t>(*v)) inst.meta.seed = *s;
      }
      return;
    }
    const auto tokens = split_ws(line);
    if (tokens.size() != 2) throw ParseError(number, "expected two coordinates");
    const auto x = parse_number<double>(tokens[0]);
    const auto y = parse_number<double>(tokens[1]);
    if (!x || !y) throw ParseError(number, "malformed number");
    if (!std::isfinite(*x) || !std::isfinite(*y)) throw ParseError(number, "non-finite coordinate");
    inst.points.emplace_back(*x, *y);
    lines.push_back(number);
  });

  const double tol = tol_point.value_or(default_tolerances(inst.points).point);
  try {
    PointIndex check(inst.points, tol);
  } catch (const DuplicatePoints& e) {
    throw DuplicatePoints(e.id_a(), e.id_b(), lines[e.id_a()], lines[e.id_b()]);
  }
  return inst;
}

Instance load_points(const std::filesystem::path& path, std::optional<double> tol_point) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_points(buf.str(), tol_point);
}

std::string write_points(const Instance& instance) {
  std::string out = "# regpoly-points v1\n";
  if (!instance.meta.name.empty()) out += "# name: " + instance.meta.name + "\n";
  if (!instance.meta.params.empty()) out += "# params: " + instance.meta.params + "\n";
  out += "# seed: " + std::to_string(instance.meta.seed) + "\n";
  for (const Vec2& p : instance.points) {
    out += shortest(p.x());
    out += ' ';
    out += shortest(p.y());
    out += '\n';
  }
  return out;
}

ResultFormat parse_format(std::string_view name) {
  if (name == "text") return ResultFormat::Text;
  if (name == "json") return ResultFormat::Json;
  if (name == "svg") return ResultFormat::Svg;
  throw InvalidArgument("unknown format: " + std::string(name));
}

std::string write_results(std::span<const ResultRecord> results, ResultFormat format,
                          std::span<const Vec2> points,
                          std::span<const std::pair<std::string, double>> stats) {
  switch (format) {
    case ResultFormat::Text: return write_text(results);
    case ResultFormat::Json: return write_json(results, stats);
    case ResultFormat::Svg: return write_svg(results, points);
  }
  return {};
}

std::vector<RegularPolygon> parse_results(std::string_view text) {
  std::vector<RegularPolygon> out;
  for_each_line(text, [&](int number, std::string_view raw) {
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') return;
    const auto tokens = split_ws(line);
    if (tokens.size() < 5) throw ParseError(number, "expected k cx cy r phase ids...");
    RegularPolygon p;
    const auto k = parse_number<int>(tokens[0]);
    const auto cx = parse_number<double>(tokens[1]);
    const auto cy = parse_number<double>(tokens[2]);
    const auto r = parse_number<double>(tokens[3]);
    const auto phase = parse_number<double>(tokens[4]);
    if (!k || !cx || !cy || !r || !phase) throw ParseError(number, "malformed number");
    if (*k < 3 || tokens.size() != static_cast<std::size_t>(5 + *k)) {
      throw ParseError(number, "vertex count does not match k");
    }
    p.k = *k;
    p.center = Vec2(*cx, *cy);
    p.radius = *r;
    p.phase = *phase;
    for (std::size_t i = 5; i < tokens.size(); ++i) {
      const auto id = parse_number<int>(tokens[i]);
      if (!id) throw ParseError(number, "malformed vertex id");
      p.vertex_ids.push_back(*id);
    }
    out.push_back(std::move(p));
  });
  return out;
}

std::vector<ResultRecord> as_records(std::span<const RegularPolygon> polygons, Source source) {
  std::vector<ResultRecord> out;
  out.reserve(polygons.size());
  for (const RegularPolygon& p : polygons) out.push_back({p, source});
  return out;
}

}  // namespace regpoly
