// regpoly: find regular polygons in planar point sets.

#include <CLI11.hpp>

#include <boost/math/distributions/chi_squared.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "regpoly/detect.hpp"
#include "regpoly/generate.hpp"
#include "regpoly/iso_sampler.hpp"
#include "regpoly/oracle.hpp"
#include "regpoly/pointset_io.hpp"
#include "regpoly/sweep.hpp"

namespace {

using namespace regpoly;

constexpr int kUsageError = 2;

struct CommonOptions {
  std::string input;
  std::string output;
  std::string format = "text";
  std::optional<double> tol_point;
  std::optional<double> tol_angle;
};

void add_common(CLI::App* cmd, CommonOptions& opt, bool needs_input = true) {
  if (needs_input) {
    cmd->add_option("input", opt.input, "Point file ('-' for stdin)")->required();
  }
  cmd->add_option("-o,--output", opt.output, "Write results here instead of stdout");
  cmd->add_option("--format", opt.format, "Result format")
      ->check(CLI::IsMember({"text", "json", "svg"}));
  cmd->add_option("--tol-point", opt.tol_point, "Point coincidence radius (default 1e-7 x bbox diagonal)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--tol-angle", opt.tol_angle, "Apex-angle matching tolerance in radians")
      ->check(CLI::PositiveNumber);
}

Instance read_input(const CommonOptions& opt) {
  if (opt.input == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return parse_points(buf.str(), opt.tol_point);
  }
  return load_points(opt.input, opt.tol_point);
}

Tolerances tolerances_for(const PointSet& points, const CommonOptions& opt) {
  Tolerances tol = default_tolerances(points);
  if (opt.tol_point) tol.point = tol.length = *opt.tol_point;
  if (opt.tol_angle) tol.angle = *opt.tol_angle;
  validate(tol);
  return tol;
}

void write_output(const std::string& path, const std::string& data) {
  if (path.empty() || path == "-") {
    std::cout << data << std::flush;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << data;
}

std::set<PolygonIdentity> identity_set(std::span<const RegularPolygon> polys) {
  std::set<PolygonIdentity> out;
  for (const auto& p : polys) out.insert(identity(p));
  return out;
}

// Prints recall against a truth file; returns true when the sets agree.
bool compare_with_truth(std::span<const RegularPolygon> found, const std::string& truth_path) {
  std::ifstream in(truth_path, std::ios::binary);
  if (!in) throw Error("cannot open " + truth_path);
  std::ostringstream buf;
  buf << in.rdbuf();
  const auto truth = identity_set(parse_results(buf.str()));
  const auto got = identity_set(found);
  std::size_t hit = 0;
  for (const auto& id : got) hit += truth.contains(id);
  std::cerr << "truth: expected=" << truth.size() << " found=" << got.size() << " matched=" << hit
            << (got == truth ? " (exact)" : " (MISMATCH)") << "\n";
  return got == truth;
}

// ---- detect -----------------------------------------------------------------

struct DetectOptions {
  CommonOptions common;
  double alpha = 0.068;
  int k_cut = 0;
  double multiplier = 8.0;
  std::uint64_t seed = 0;
  int threads = 1;
  bool alias = false;
  std::string truth;
};

int run_detect(const DetectOptions& opt) {
  const Instance inst = read_input(opt.common);
  DetectorParams params;
  params.alpha = opt.alpha;
  params.k_cut = opt.k_cut;
  params.sample_multiplier = opt.multiplier;
  params.seed = opt.seed;
  params.threads = opt.threads;
  params.alias_sampling = opt.alias;
  params.tol = tolerances_for(inst.points, opt.common);

  const DetectAllResult r = detect_all(inst.points, params);
  const RunStats& s = r.large;
  for (const auto& w : s.warnings) std::cerr << "warning: " << w << "\n";
  std::cerr << "n=" << inst.points.size() << " k_cut=" << r.k_cut << " polygons=" << r.records.size()
            << "\n"
            << "sweep: originations=" << r.sweep.originations << " propagations=" << r.sweep.propagations
            << " terminations=" << r.sweep.terminations << " discards=" << r.sweep.discards
            << " signals=" << r.sweep.signals << " seconds=" << r.sweep_seconds << "\n"
            << "sampler: samples=" << s.samples_drawn << " degenerate=" << s.triples_degenerate
            << " nonspecial=" << s.triples_nonspecial << " candidates=" << s.candidates_tried
            << " memo_hits=" << s.memo_hits << " full=" << s.verifications_full
            << " early_exit=" << s.verifications_early_exit
            << " mean_probes_on_failure=" << s.mean_probes_on_failure() << " tol_angle=" << s.tol_angle
            << " seconds=" << r.large_seconds << "\n";

  const std::vector<std::pair<std::string, double>> stats{
      {"n", static_cast<double>(inst.points.size())},
      {"k_cut", r.k_cut},
      {"samples_drawn", static_cast<double>(s.samples_drawn)},
      {"candidates_tried", static_cast<double>(s.candidates_tried)},
      {"verifications_full", static_cast<double>(s.verifications_full)},
      {"verifications_early_exit", static_cast<double>(s.verifications_early_exit)},
      {"mean_probes_on_failure", s.mean_probes_on_failure()},
      {"sweep_signals", static_cast<double>(r.sweep.signals)}};
  write_output(opt.common.output,
               write_results(r.records, parse_format(opt.common.format), inst.points, stats));

  if (!opt.truth.empty()) {
    std::vector<RegularPolygon> polys;
    for (const auto& rec : r.records) polys.push_back(rec.polygon);
    return compare_with_truth(polys, opt.truth) ? 0 : 1;
  }
  return 0;
}

// ---- oracle -----------------------------------------------------------------

struct OracleOptions {
  CommonOptions common;
  int k_max = 0;
  std::string truth;
};

int run_oracle(const OracleOptions& opt) {
  const Instance inst = read_input(opt.common);
  const int n = static_cast<int>(inst.points.size());
  const int k_max = opt.k_max > 0 ? std::min(opt.k_max, n) : n;
  const Tolerances tol = tolerances_for(inst.points, opt.common);
  const OracleReport report = oracle_report(inst.points, std::max(k_max, 3), tol);
  std::cerr << "n=" << n << " k_max=" << k_max << " polygons=" << report.polygons.size() << "\n";
  for (const auto& [k, count] : report.counts_by_k) std::cerr << "  k=" << k << " count=" << count << "\n";
  write_output(opt.common.output, write_results(as_records(report.polygons, Source::Oracle),
                                                parse_format(opt.common.format), inst.points));
  if (!opt.truth.empty()) return compare_with_truth(report.polygons, opt.truth) ? 0 : 1;
  return 0;
}

// ---- gen --------------------------------------------------------------------

struct GenOptions {
  std::string output;
  std::string truth;
  std::vector<std::string> embed;
  int random_gons = 0;
  int k_min = 3;
  int k_max = 12;
  std::size_t n_noise = 0;
  double drop_fraction = 0.0;
  std::uint64_t seed = 0;
  std::string name;
};

EmbeddedGon parse_embed(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string field;
  while (std::getline(ss, field, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(field, &used));
      if (used != field.size()) throw std::invalid_argument(field);
    } catch (const std::exception&) {
      throw InvalidArgument("bad --embed value '" + text + "'");
    }
  }
  if (v.size() < 4 || v.size() > 6) {
    throw InvalidArgument("--embed expects k,cx,cy,r[,phase[,drop_fraction]]: '" + text + "'");
  }
  EmbeddedGon g;
  g.k = static_cast<int>(v[0]);
  if (g.k != v[0]) throw InvalidArgument("--embed k must be an integer: '" + text + "'");
  g.center = Vec2(v[1], v[2]);
  g.radius = v[3];
  if (v.size() > 4) g.phase = v[4];
  if (v.size() > 5) g.drop_fraction = v[5];
  return g;
}

int run_gen(const GenOptions& opt) {
  GenSpec spec;
  spec.n_noise = opt.n_noise;
  spec.drop_fraction = opt.drop_fraction;
  spec.seed = opt.seed;
  spec.name = opt.name;
  for (const auto& e : opt.embed) spec.embedded.push_back(parse_embed(e));
  if (opt.random_gons > 0) {
    Rng rng = make_stream(opt.seed, 0x72616e64ULL);
    for (auto& g : random_embedded(opt.random_gons, opt.k_min, opt.k_max, rng)) spec.embedded.push_back(g);
  }
  const Instance inst = generate(spec);
  write_output(opt.output, write_points(inst));
  if (!opt.truth.empty()) {
    std::ofstream out(opt.truth, std::ios::binary);
    if (!out) throw Error("cannot write " + opt.truth);
    out << write_results(as_records(inst.ground_truth, Source::Oracle), ResultFormat::Text);
  }
  std::cerr << "points=" << inst.points.size() << " ground_truth=" << inst.ground_truth.size() << "\n";
  return 0;
}

// ---- sample-stats -----------------------------------------------------------

struct SampleStatsOptions {
  CommonOptions common;
  std::uint64_t draws = 1'000'000;
  std::uint64_t seed = 0;
  bool alias = false;
  std::size_t max_n = 200;
};

int run_sample_stats(const SampleStatsOptions& opt) {
  const Instance inst = read_input(opt.common);
  if (inst.points.size() > opt.max_n) {
    throw InvalidArgument("sample-stats enumerates triples exhaustively; n=" +
                          std::to_string(inst.points.size()) + " exceeds --max-n " +
                          std::to_string(opt.max_n));
  }
  const Tolerances tol = tolerances_for(inst.points, opt.common);
  std::optional<BucketIndex> index;
  try {
    index.emplace(build_buckets(inst.points, tol));
  } catch (const NoIsosceles&) {
    write_output(opt.common.output, "# regpoly-sample-stats v1\nempty\n");
    return 0;
  }
  if (opt.alias) index->use_alias(true);

  const auto triples = enumerate_isosceles(inst.points, tol);
  std::map<std::array<int, 3>, std::uint64_t> counts;
  for (const auto& t : triples) counts.emplace(t, 0);
  std::uint64_t unknown = 0;
  Rng rng = make_stream(opt.seed);
  for (std::uint64_t i = 0; i < opt.draws; ++i) {
    auto it = counts.find(sample_triple(*index, rng));
    if (it == counts.end()) {
      ++unknown;
    } else {
      ++it->second;
    }
  }

  const double expected = static_cast<double>(opt.draws) / static_cast<double>(counts.size());
  double chi2 = 0;
  for (const auto& [t, c] : counts) chi2 += (c - expected) * (c - expected) / expected;
  const double df = static_cast<double>(counts.size()) - 1;
  double p_value = 1.0, critical = 0.0;
  if (df > 0) {
    const boost::math::chi_squared dist(df);
    p_value = boost::math::cdf(boost::math::complement(dist, chi2));
    critical = boost::math::quantile(boost::math::complement(dist, 1e-3));
  }

  std::ostringstream os;
  os << "# regpoly-sample-stats v1\n"
     << "# triples=" << counts.size() << " index_count=" << count_isosceles_triples(*index)
     << " draws=" << opt.draws << " unknown=" << unknown << "\n"
     << "# chi_square=" << chi2 << " df=" << df << " p_value=" << p_value
     << " critical_1e-3=" << critical << " " << (chi2 < critical || df == 0 ? "pass" : "fail") << "\n"
     << "p q r count\n";
  for (const auto& [t, c] : counts) os << t[0] << ' ' << t[1] << ' ' << t[2] << ' ' << c << '\n';
  write_output(opt.common.output, os.str());
  return unknown == 0 ? 0 : 1;
}

// ---- bench ------------------------------------------------------------------

struct BenchOptions {
  std::vector<std::size_t> sizes{500, 1000, 2000, 4000};
  std::vector<std::string> phases{"buckets", "sweep", "large"};
  int reps = 1;
  std::uint64_t seed = 0;
  int k_cut = 0;
  double alpha = 0.068;
  double multiplier = 0.05;
  int threads = 1;
  std::string output;
};

int run_bench(const BenchOptions& opt) {
  using Clock = std::chrono::steady_clock;
  std::ostringstream os;
  os << "n,phase,rep,seconds,work,found\n";
  auto emit = [&](std::size_t n, const std::string& phase, int rep, double sec, std::uint64_t work,
                  std::size_t found) {
    os << n << ',' << phase << ',' << rep << ',' << sec << ',' << work << ',' << found << '\n';
    std::cerr << "n=" << n << " " << phase << " rep=" << rep << " " << sec << "s\n";
  };

  for (std::size_t n : opt.sizes) {
    if (n < 3) throw InvalidArgument("bench sizes must be >= 3");
    GenSpec spec;
    spec.n_noise = n;
    spec.seed = opt.seed + n;
    const Instance inst = generate(spec);
    const Tolerances tol = default_tolerances(inst.points);
    const int k_cut = opt.k_cut > 0 ? opt.k_cut : default_k_cut(n, opt.alpha);
    for (int rep = 0; rep < opt.reps; ++rep) {
      for (const std::string& phase : opt.phases) {
        const auto t0 = Clock::now();
        std::uint64_t work = 0;
        std::size_t found = 0;
        if (phase == "buckets") {
          try {
            work = count_isosceles_triples(build_buckets(inst.points, tol));
          } catch (const NoIsosceles&) {
          }
        } else if (phase == "sweep") {
          SweepDetector sweep(inst.points, k_cut, tol);
          found = sweep.run().size();
          work = sweep.counters().signals;
        } else if (phase == "large") {
          DetectorParams params;
          params.k_cut = k_cut;
          params.sample_multiplier = opt.multiplier;
          params.seed = opt.seed + static_cast<std::uint64_t>(rep);
          params.threads = opt.threads;
          params.tol = tol;
          const LargeResult r = detect_large_gons(inst.points, params);
          found = r.polygons.size();
          work = r.stats.samples_drawn;
        } else {
          throw InvalidArgument("unknown bench phase: " + phase);
        }
        emit(n, phase, rep, std::chrono::duration<double>(Clock::now() - t0).count(), work, found);
      }
    }
  }
  write_output(opt.output, os.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Find regular polygons whose vertices are points of a planar point set"};
  app.require_subcommand(1);

  DetectOptions detect;
  auto* cmd_detect = app.add_subcommand("detect", "Find every regular k-gon (sweep + sampler)");
  add_common(cmd_detect, detect.common);
  cmd_detect->add_option("--alpha", detect.alpha, "Exponent for the default k_cut = max(3, ceil(n^alpha))")
      ->check(CLI::Range(0.0, 1.0));
  cmd_detect->add_option("--k-cut", detect.k_cut, "Sweep handles k <= k_cut, sampler k >= k_cut")
      ->check(CLI::Range(3, 1 << 30));
  cmd_detect->add_option("--multiplier", detect.multiplier, "Sample multiplier c in c n^2 ln^2 n")
      ->check(CLI::PositiveNumber);
  cmd_detect->add_option("--seed", detect.seed, "Random seed");
  cmd_detect->add_option("--threads", detect.threads, "Sampler worker threads")->check(CLI::Range(1, 256));
  cmd_detect->add_flag("--alias", detect.alias, "Alias-table bucket selection");
  cmd_detect->add_option("--truth", detect.truth, "Compare with a ground-truth result file (exit 1 on mismatch)");

  OracleOptions oracle;
  auto* cmd_oracle = app.add_subcommand("oracle", "Exhaustive enumeration (small inputs)");
  add_common(cmd_oracle, oracle.common);
  cmd_oracle->add_option("--k-max", oracle.k_max, "Largest polygon size reported (default n)")
      ->check(CLI::Range(3, 1 << 30));
  cmd_oracle->add_option("--truth", oracle.truth, "Compare with a ground-truth result file (exit 1 on mismatch)");

  GenOptions gen;
  auto* cmd_gen = app.add_subcommand("gen", "Generate a point set with embedded polygons");
  cmd_gen->add_option("-o,--output", gen.output, "Point file to write (default stdout)");
  cmd_gen->add_option("--truth", gen.truth, "Write the ground-truth polygons to this file");
  cmd_gen->add_option("--embed", gen.embed, "Embedded polygon k,cx,cy,r[,phase[,drop_fraction]] (repeatable)");
  cmd_gen->add_option("--random-gons", gen.random_gons, "Number of random embedded polygons")
      ->check(CLI::NonNegativeNumber);
  cmd_gen->add_option("--k-min", gen.k_min, "Smallest k for random polygons")->check(CLI::Range(3, 1 << 20));
  cmd_gen->add_option("--k-max", gen.k_max, "Largest k for random polygons")->check(CLI::Range(3, 1 << 20));
  cmd_gen->add_option("--n-noise", gen.n_noise, "Uniform noise points in the unit square");
  cmd_gen->add_option("--drop-fraction", gen.drop_fraction, "Fraction of vertices removed from each polygon")
      ->check(CLI::Range(0.0, 1.0));
  cmd_gen->add_option("--seed", gen.seed, "Random seed");
  cmd_gen->add_option("--name", gen.name, "Instance name stored in the file");

  SampleStatsOptions stats;
  auto* cmd_stats = app.add_subcommand("sample-stats", "Check isosceles-triple sampling against enumeration");
  add_common(cmd_stats, stats.common);
  cmd_stats->add_option("--draws", stats.draws, "Number of sampled triples")->check(CLI::PositiveNumber);
  cmd_stats->add_option("--seed", stats.seed, "Random seed");
  cmd_stats->add_flag("--alias", stats.alias, "Alias-table bucket selection");
  cmd_stats->add_option("--max-n", stats.max_n, "Refuse inputs larger than this");

  BenchOptions bench;
  auto* cmd_bench = app.add_subcommand("bench", "Time bucket building, sweep and sampler over a size ladder");
  cmd_bench->add_option("--sizes", bench.sizes, "Point counts")->delimiter(',');
  cmd_bench->add_option("--phases", bench.phases, "Phases to time: buckets, sweep, large")
      ->delimiter(',')
      ->check(CLI::IsMember({"buckets", "sweep", "large"}));
  cmd_bench->add_option("--reps", bench.reps, "Repetitions per size")->check(CLI::Range(1, 1000));
  cmd_bench->add_option("--seed", bench.seed, "Random seed");
  cmd_bench->add_option("--k-cut", bench.k_cut, "k_cut for sweep and sampler")->check(CLI::Range(3, 1 << 30));
  cmd_bench->add_option("--alpha", bench.alpha, "Exponent for the default k_cut")->check(CLI::Range(0.0, 1.0));
  cmd_bench->add_option("--multiplier", bench.multiplier, "Sample multiplier for the sampler phase")
      ->check(CLI::PositiveNumber);
  cmd_bench->add_option("--threads", bench.threads, "Sampler worker threads")->check(CLI::Range(1, 256));
  cmd_bench->add_option("-o,--output", bench.output, "CSV file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    if (*cmd_detect) return run_detect(detect);
    if (*cmd_oracle) return run_oracle(oracle);
    if (*cmd_gen) return run_gen(gen);
    if (*cmd_stats) return run_sample_stats(stats);
    if (*cmd_bench) return run_bench(bench);
  } catch (const regpoly::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  }
  return kUsageError;
}
