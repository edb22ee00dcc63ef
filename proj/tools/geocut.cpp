// geocut: neighborhood-graph clustering quality measures, their limits, and
// the sampling experiments around them. One subcommand per study; every run
// is reproducible from a JSON config and a single seed.

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>

#include "geocut/density.hpp"
#include "geocut/errors.hpp"
#include "geocut/experiments.hpp"
#include "geocut/graph.hpp"
#include "geocut/limits.hpp"
#include "geocut/quality.hpp"
#include "geocut/spectral.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace geocut;

namespace {

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config '" + path + "': " + e.what());
  }
}

const json& require_field(const json& j, const std::string& key) {
  if (!j.contains(key)) throw ConfigError("missing config field '" + key + "'");
  return j.at(key);
}

Vector vector_from(const json& j, const std::string& what) {
  if (!j.is_array() || j.empty())
    throw ConfigError(what + " must be a nonempty array");
  Vector v(j.size());
  for (size_t i = 0; i < j.size(); ++i) v[i] = j[i].get<double>();
  return v;
}

Density density_from_config(const json& j) {
  if (j.is_string()) return preset_density(j.get<std::string>());
  if (!j.is_object()) throw ConfigError("density must be a preset name or object");
  if (j.contains("uniform")) {
    const json& u = j.at("uniform");
    Box box{vector_from(require_field(u, "lo"), "density.uniform.lo"),
            vector_from(require_field(u, "hi"), "density.uniform.hi")};
    return Density(UniformBox(box), j.value("id", std::string("uniform")));
  }
  const int dim = require_field(j, "dim").get<int>();
  const double theta = require_field(j, "theta").get<double>();
  std::vector<GaussianComponent> comps;
  for (const json& c : require_field(j, "components")) {
    GaussianComponent gc;
    gc.weight = require_field(c, "weight").get<double>();
    gc.mean = vector_from(require_field(c, "mean"), "component mean");
    gc.std = require_field(c, "std").get<double>();
    comps.push_back(std::move(gc));
  }
  return Density(TruncatedMixture::normalize(comps, theta, dim),
                 j.value("id", std::string("mixture")));
}

Hyperplane hyperplane_from_config(const json& j, int dim) {
  if (j.contains("axis"))
    return Hyperplane::axis(j.at("axis").get<int>(),
                            require_field(j, "offset").get<double>(), dim);
  return Hyperplane::general(
      vector_from(require_field(j, "normal"), "hyperplane.normal"),
      require_field(j, "offset").get<double>());
}

WeightFunction weight_from_config(const json& j, int dim) {
  if (j.is_null()) return WeightFunction::unit();
  const std::string kind = j.value("kind", std::string("unit"));
  if (kind == "unit") return WeightFunction::unit();
  if (kind == "gaussian")
    return WeightFunction::gaussian(require_field(j, "sigma").get<double>(), dim);
  throw ConfigError("weight.kind must be 'unit' or 'gaussian'");
}

GaussianRegime regime_from_config(const json& j) {
  const std::string r = j.value("regime", std::string(""));
  if (r.empty()) return GaussianRegime::unspecified;
  if (r == "r_dominates_sigma") return GaussianRegime::r_dominates_sigma;
  if (r == "sigma_dominates_r") return GaussianRegime::sigma_dominates_r;
  throw ConfigError("graph.regime must be r_dominates_sigma or sigma_dominates_r");
}

// points come from an inline array, a points.csv file, or a sampled density
Matrix points_from_config(const json& j, uint64_t seed_override,
                          bool has_seed_override) {
  if (j.contains("points")) {
    const json& arr = j.at("points");
    if (!arr.is_array() || arr.empty())
      throw ConfigError("points must be a nonempty array of rows");
    const size_t d = arr[0].size();
    Matrix pts(arr.size(), d);
    for (size_t i = 0; i < arr.size(); ++i) {
      if (arr[i].size() != d) throw ConfigError("ragged points array");
      for (size_t c = 0; c < d; ++c) pts(i, c) = arr[i][c].get<double>();
    }
    return pts;
  }
  if (j.contains("points_csv")) {
    std::ifstream in(j.at("points_csv").get<std::string>());
    if (!in) throw ConfigError("cannot open points_csv file");
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#' ||
          std::isalpha(static_cast<unsigned char>(line[0])))
        continue;
      std::vector<double> row;
      std::stringstream ss(line);
      std::string tok;
      while (std::getline(ss, tok, ',')) row.push_back(std::stod(tok));
      rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ConfigError("points_csv has no data rows");
    Matrix pts(rows.size(), rows[0].size());
    for (size_t i = 0; i < rows.size(); ++i)
      for (size_t c = 0; c < rows[0].size(); ++c) pts(i, c) = rows[i][c];
    return pts;
  }
  const Density density = density_from_config(require_field(j, "density"));
  const int n = require_field(j, "n").get<int>();
  const uint64_t seed =
      has_seed_override ? seed_override : j.value("seed", uint64_t{1});
  return density.sample(n, seed).points;
}

NeighborhoodGraph graph_from_config(const json& j, const Matrix& points) {
  const int dim = static_cast<int>(points.cols());
  const std::string kind = require_field(j, "kind").get<std::string>();
  const WeightFunction weight =
      weight_from_config(j.contains("weight") ? j.at("weight") : json(), dim);
  NeighborhoodGraph g;
  if (kind == "r_neighborhood") {
    double r = 0.0;
    if (j.contains("r_rule")) {
      const json& rule = j.at("r_rule");
      if (rule.contains("mean_knn_radius"))
        r = mean_knn_radius(points, rule.at("mean_knn_radius").get<int>());
      else
        throw ConfigError("r_rule must contain mean_knn_radius");
    } else {
      r = require_field(j, "r").get<double>();
    }
    g = build_r_graph(points, r, weight);
  } else if (kind == "complete") {
    g = build_complete(points, weight);
  } else {
    g = build_knn(points, require_field(j, "k").get<int>(),
                  graph_kind_from_name(kind), weight);
  }
  g.spec.regime = regime_from_config(j);
  return g;
}

void ensure_dir(const std::string& dir) {
  if (!dir.empty()) fs::create_directories(dir);
}

std::string out_path(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out << content;
}

void write_points_csv(const std::string& path, const Matrix& pts,
                      const std::string& density_id, uint64_t seed) {
  std::ostringstream os;
  os << "# density=" << density_id << " n=" << pts.rows() << " seed=" << seed
     << " dim=" << pts.cols() << "\n";
  for (int c = 0; c < pts.cols(); ++c) os << (c ? ",x" : "x") << c;
  os << "\n";
  for (int i = 0; i < pts.rows(); ++i) {
    for (int c = 0; c < pts.cols(); ++c)
      os << (c ? "," : "") << fmt17(pts(i, c));
    os << "\n";
  }
  write_file(path, os.str());
}

std::string family_tag(GraphFamily f) {
  if (f == GraphFamily::knn_unweighted) return "knn";
  if (f == GraphFamily::r_unweighted) return "r";
  return family_name(f);
}

json stat_json(const DistanceStat& s) {
  return json{{"mean", s.mean}, {"std", s.std}, {"pairs", s.pairs}};
}

struct CommonOpts {
  std::string config_path;
  std::string output_dir = ".";
  std::optional<uint64_t> seed;
  int threads = 0;
  std::string format = "csv";
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool needs_config = true) {
  auto* c = cmd->add_option("--config", opts.config_path, "JSON config file");
  if (needs_config) c->required();
  cmd->add_option("--output-dir", opts.output_dir, "output directory");
  cmd->add_option("--seed", opts.seed, "override the config seed");
  cmd->add_option("--threads", opts.threads,
                  "worker thread cap (default: available cores)");
  cmd->add_option("--format", opts.format, "csv or json stdout summary");
}

uint64_t resolve_seed(const json& cfg, const CommonOpts& opts,
                      const char* key = "seed") {
  if (opts.seed) return *opts.seed;
  return cfg.value(key, uint64_t{1});
}

json echo_config(const json& cfg, const CommonOpts& opts, uint64_t seed) {
  json echo = cfg;
  echo["resolved"] = {{"seed", seed},
                      {"threads", opts.threads},
                      {"output_dir", opts.output_dir}};
  return echo;
}

int run_sample(const CommonOpts& opts) {
  const json cfg = load_config(opts.config_path);
  const Density density = density_from_config(require_field(cfg, "density"));
  const int n = require_field(cfg, "n").get<int>();
  const uint64_t seed = resolve_seed(cfg, opts);
  const SampleSet s = density.sample(n, seed);
  ensure_dir(opts.output_dir);
  const std::string path = out_path(opts.output_dir, "points.csv");
  write_points_csv(path, s.points, s.density_id, seed);
  std::printf("sample: density=%s n=%d seed=%llu dim=%d -> %s\n",
              s.density_id.c_str(), n, (unsigned long long)seed, density.dim(),
              path.c_str());
  return 0;
}

int run_graph_cmd(const CommonOpts& opts) {
  const json cfg = load_config(opts.config_path);
  const Matrix pts =
      points_from_config(cfg, opts.seed.value_or(0), opts.seed.has_value());
  const NeighborhoodGraph g = graph_from_config(require_field(cfg, "graph"), pts);
  ensure_dir(opts.output_dir);
  const std::string path = out_path(opts.output_dir, "graph.csv");
  std::ostringstream os;
  write_graph_csv(os, g);
  write_file(path, os.str());
  std::printf("graph: kind=%s n=%d edges=%zu -> %s\n",
              graph_kind_name(g.spec.kind).c_str(), g.n, g.edges.size(),
              path.c_str());
  return 0;
}

int run_quality(const CommonOpts& opts) {
  const json cfg = load_config(opts.config_path);
  const Matrix pts =
      points_from_config(cfg, opts.seed.value_or(0), opts.seed.has_value());
  const NeighborhoodGraph g = graph_from_config(require_field(cfg, "graph"), pts);
  const Hyperplane plane = hyperplane_from_config(
      require_field(cfg, "hyperplane"), static_cast<int>(pts.cols()));
  const QualityReport rep = ncut(g, induce_partition(pts, plane));
  ensure_dir(opts.output_dir);
  write_file(out_path(opts.output_dir, "quality.json"), quality_json(rep) + "\n");
  if (opts.format == "json")
    std::printf("%s\n", quality_json(rep).c_str());
  else
    std::printf("%s\n%s\n", quality_csv_header().c_str(),
                quality_csv_line(rep).c_str());
  return 0;
}

int run_limits(const CommonOpts& opts) {
  const json cfg = load_config(opts.config_path);
  const Density density = density_from_config(require_field(cfg, "density"));
  const Hyperplane plane =
      hyperplane_from_config(require_field(cfg, "hyperplane"), density.dim());
  const GraphFamily family =
      family_from_name(require_field(cfg, "family").get<std::string>());
  const LimitReport rep = ncut_limit(density, plane, family);
  ensure_dir(opts.output_dir);
  write_file(out_path(opts.output_dir, "limits.json"),
             limit_report_json(rep) + "\n");
  std::printf("%s\n", limit_report_json(rep).c_str());
  return 0;
}

std::vector<double> offsets_from_config(const json& cfg, const Density& density,
                                        int axis) {
  std::vector<double> offsets;
  if (cfg.contains("offsets")) {
    const json& j = cfg.at("offsets");
    if (j.is_array()) {
      for (const json& v : j) offsets.push_back(v.get<double>());
      return offsets;
    }
    const double start = require_field(j, "start").get<double>();
    const double stop = require_field(j, "stop").get<double>();
    const double step = require_field(j, "step").get<double>();
    if (!(step > 0.0)) throw ConfigError("offsets.step must be > 0");
    for (double b = start; b <= stop + 1e-15; b += step) offsets.push_back(b);
    return offsets;
  }
  // default: the support projection with a tiny margin, step 1e-3
  const Box& box = density.bounding_box();
  const double lo = box.lo[axis], hi = box.hi[axis];
  const double margin = 1e-6 * (hi - lo);
  for (double b = lo + margin; b < hi - margin; b += 1e-3) offsets.push_back(b);
  return offsets;
}

int run_sweep(const CommonOpts& opts) {
  const json cfg = load_config(opts.config_path);
  const Density density = density_from_config(require_field(cfg, "density"));
  const int axis = cfg.value("axis", 0);
  const std::vector<double> offsets = offsets_from_config(cfg, density, axis);

  std::vector<GraphFamily> families;
  if (cfg.contains("families"))
    for (const json& f : cfg.at("families"))
      families.push_back(family_from_name(f.get<std::string>()));
  else
    families = {GraphFamily::knn_unweighted, GraphFamily::r_unweighted};

  ensure_dir(opts.output_dir);
  json summary;
  summary["density"] = density.id();
  summary["axis"] = axis;
  summary["sweeps"] = json::array();
  for (GraphFamily family : families) {
    const SweepResult res = optimal_cut_sweep(density, family, axis, offsets);
    std::ostringstream os;
    os << "offset,ncut_lim,cheeger_lim\n";
    for (const SweepPoint& pt : res.curve)
      os << fmt17(pt.offset) << "," << fmt17(pt.ncut_lim) << ","
         << fmt17(pt.cheeger_lim) << "\n";
    const std::string path =
        out_path(opts.output_dir, "curve_" + family_tag(family) + ".csv");
    write_file(path, os.str());
    summary["sweeps"].push_back({{"family", family_name(family)},
                                 {"best_offset", res.best_offset},
                                 {"best_ncut", res.best_ncut}});
    std::printf("sweep: family=%s best_offset=%.6f -> %s\n",
                family_name(family).c_str(), res.best_offset, path.c_str());
  }
  write_file(out_path(opts.output_dir, "summary.json"), summary.dump(2) + "\n");
  return 0;
}

int run_spectral(const CommonOpts& opts) {
  const json cfg = load_config(opts.config_path);
  const Matrix pts =
      points_from_config(cfg, opts.seed.value_or(0), opts.seed.has_value());
  const NeighborhoodGraph g = graph_from_config(require_field(cfg, "graph"), pts);
  SpectralConfig sc;
  sc.eig_tolerance = cfg.value("eig_tolerance", 1e-8);
  sc.max_iterations = cfg.value("max_iterations", 4000);
  const SpectralResult res = spectral_bipartition(g, sc);

  ensure_dir(opts.output_dir);
  std::ostringstream os;
  os << "index,label\n";
  for (int i = 0; i < g.n; ++i)
    os << i << "," << (res.partition.labels[i] ? 1 : 0) << "\n";
  write_file(out_path(opts.output_dir, "labels.csv"), os.str());

  json meta{{"lambda2", res.lambda2},
            {"ncut", res.ncut},
            {"threshold_index", res.threshold_index},
            {"eig_residual", res.eig_residual},
            {"disconnected", res.disconnected},
            {"n_components", res.n_components}};
  write_file(out_path(opts.output_dir, "spectral.json"), meta.dump(2) + "\n");
  std::printf("spectral: lambda2=%.8g ncut=%.8g disconnected=%d -> labels.csv\n",
              res.lambda2, res.ncut, res.disconnected ? 1 : 0);
  return 0;
}

int run_compare(const CommonOpts& opts) {
  const json cfg = load_config(opts.config_path);
  const Density density = density_from_config(require_field(cfg, "density"));
  ComparisonConfig config;
  config.n = cfg.value("n", 2000);
  config.reps = cfg.value("reps", 20);
  config.k = cfg.value("k", density.dim() == 2 ? 150 : 30);
  config.base_seed = resolve_seed(cfg, opts, "base_seed");
  config.threads = opts.threads;
  if (cfg.contains("r_rule") && cfg.at("r_rule").is_object()) {
    config.r_from_mean_knn = false;
    config.r_fixed = require_field(cfg.at("r_rule"), "fixed").get<double>();
  }
  const ComparisonResult res = run_comparison(density, config);

  ensure_dir(opts.output_dir);
  write_file(out_path(opts.output_dir, "config.json"),
             echo_config(cfg, opts, config.base_seed).dump(2) + "\n");

  std::ostringstream os;
  os << "kind,rep_a,rep_b,distance\n";
  auto dump_pairs = [&os](const char* kind, const std::vector<PairDistance>& v) {
    for (const PairDistance& p : v)
      os << kind << "," << p.rep_a << "," << p.rep_b << "," << fmt17(p.value)
         << "\n";
  };
  dump_pairs("knn", res.knn_pairs);
  dump_pairs("r", res.r_pairs);
  dump_pairs("cross_same_rep", res.cross_pairs);
  dump_pairs("cross_all_pairs", res.cross_all_pairs);
  write_file(out_path(opts.output_dir, "results.csv"), os.str());

  if (!res.knn_boundaries.empty()) {
    std::ostringstream bs;
    bs << "rep,knn_boundary,r_boundary\n";
    for (size_t rep = 0; rep < res.knn_boundaries.size(); ++rep)
      bs << rep << "," << fmt17(res.knn_boundaries[rep]) << ","
         << fmt17(res.r_boundaries[rep]) << "\n";
    write_file(out_path(opts.output_dir, "boundaries.csv"), bs.str());
  }

  json summary{{"density", density.id()},
               {"n", config.n},
               {"reps", config.reps},
               {"k", config.k},
               {"d_knn", stat_json(res.d_knn)},
               {"d_r", stat_json(res.d_r)},
               {"d_knn_r", stat_json(res.d_cross)},
               {"d_knn_r_all_pairs", stat_json(res.d_cross_all_pairs)},
               {"r_values", res.r_values},
               {"flagged_reps", res.flagged_reps}};
  write_file(out_path(opts.output_dir, "summary.json"), summary.dump(2) + "\n");
  std::printf(
      "compare: d_knn=%.4f+-%.4f d_r=%.4f+-%.4f d_knn_r=%.4f+-%.4f "
      "flagged=%zu/%d\n",
      res.d_knn.mean, res.d_knn.std, res.d_r.mean, res.d_r.std,
      res.d_cross.mean, res.d_cross.std, res.flagged_reps.size(), config.reps);
  return 0;
}

ParamSchedule schedule_from_config(const json& j) {
  ParamSchedule s;
  s.scale = j.value("scale", 1.0);
  s.pow_n = j.value("pow_n", 0.0);
  s.pow_log = j.value("pow_log", 0.0);
  return s;
}

int run_converge(const CommonOpts& opts) {
  const json cfg = load_config(opts.config_path);
  const Density density = density_from_config(require_field(cfg, "density"));
  ConvergenceConfig config;
  config.family =
      family_from_name(require_field(cfg, "family").get<std::string>());
  if (cfg.contains("knn_kind"))
    config.knn_kind = graph_kind_from_name(cfg.at("knn_kind").get<std::string>());
  for (const json& n : require_field(cfg, "n_grid"))
    config.n_grid.push_back(n.get<int>());
  config.schedule = schedule_from_config(require_field(cfg, "schedule"));
  if (cfg.contains("sigma_schedule"))
    config.sigma_schedule = schedule_from_config(cfg.at("sigma_schedule"));
  config.reps = cfg.value("reps", 10);
  config.axis = cfg.value("axis", 0);
  config.offset = cfg.value("offset", 0.5);
  config.base_seed = resolve_seed(cfg, opts, "base_seed");
  config.threads = opts.threads;

  const ConvergenceResult res = run_convergence(density, config);

  ensure_dir(opts.output_dir);
  write_file(out_path(opts.output_dir, "config.json"),
             echo_config(cfg, opts, config.base_seed).dump(2) + "\n");
  std::ostringstream os;
  os << "n,param,sigma,scaled_ncut_mean,scaled_ncut_std,mean_abs_error,limit\n";
  for (const ConvergenceRow& row : res.rows)
    os << row.n << "," << fmt17(row.param) << "," << fmt17(row.sigma) << ","
       << fmt17(row.scaled_ncut_mean) << "," << fmt17(row.scaled_ncut_std)
       << "," << fmt17(row.mean_abs_error) << "," << fmt17(res.limit) << "\n";
  write_file(out_path(opts.output_dir, "results.csv"), os.str());

  json summary{{"density", density.id()},
               {"family", family_name(config.family)},
               {"limit", res.limit},
               {"rows", json::array()}};
  for (const ConvergenceRow& row : res.rows) {
    summary["rows"].push_back({{"n", row.n},
                               {"param", row.param},
                               {"sigma", row.sigma},
                               {"scaled_ncut_mean", row.scaled_ncut_mean},
                               {"scaled_ncut_std", row.scaled_ncut_std},
                               {"mean_abs_error", row.mean_abs_error}});
    std::printf("converge: n=%d scaled_ncut=%.5f (limit %.5f, |err|=%.5f)\n",
                row.n, row.scaled_ncut_mean, res.limit, row.mean_abs_error);
  }
  write_file(out_path(opts.output_dir, "summary.json"), summary.dump(2) + "\n");
  return 0;
}

int run_histogram(const CommonOpts& opts) {
  const json cfg = load_config(opts.config_path);
  const Density density = density_from_config(require_field(cfg, "density"));
  HistogramConfig config;
  if (cfg.contains("families")) {
    config.families.clear();
    for (const json& f : cfg.at("families"))
      config.families.push_back(family_from_name(f.get<std::string>()));
  }
  config.n = cfg.value("n", 2000);
  config.reps = cfg.value("reps", 100);
  config.k = cfg.value("k", 30);
  config.sweep_step = cfg.value("sweep_step", 1e-3);
  config.base_seed = resolve_seed(cfg, opts, "base_seed");
  config.threads = opts.threads;

  const HistogramResult res = run_boundary_histogram(density, config);

  ensure_dir(opts.output_dir);
  write_file(out_path(opts.output_dir, "config.json"),
             echo_config(cfg, opts, config.base_seed).dump(2) + "\n");
  std::ostringstream os;
  os << "family,rep,boundary\n";
  for (const FamilyHistogram& h : res.families)
    for (size_t rep = 0; rep < h.boundaries.size(); ++rep)
      os << family_name(h.family) << "," << rep << ","
         << fmt17(h.boundaries[rep]) << "\n";
  write_file(out_path(opts.output_dir, "boundaries.csv"), os.str());

  json summary{{"density", density.id()},
               {"n", config.n},
               {"reps", config.reps},
               {"k", config.k},
               {"families", json::array()}};
  for (const FamilyHistogram& h : res.families) {
    summary["families"].push_back(
        {{"family", family_name(h.family)},
         {"boundary_mean", h.mean},
         {"boundary_std", h.std},
         {"sweep_best_offset", h.sweep_best_offset},
         {"interleaved_count", h.interleaved_count},
         {"flagged_reps", h.flagged_reps}});
    std::printf(
        "histogram: family=%s mean_boundary=%.5f sweep_best=%.5f flagged=%zu\n",
        family_name(h.family).c_str(), h.mean, h.sweep_best_offset,
        h.flagged_reps.size());
  }
  write_file(out_path(opts.output_dir, "summary.json"), summary.dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"neighborhood-graph cut quality measures and their limits"};
  app.require_subcommand(1);

  CommonOpts opts;
  struct Sub {
    const char* name;
    const char* help;
    int (*fn)(const CommonOpts&);
  };
  const Sub subs[] = {
      {"sample", "draw a sample set from a density", run_sample},
      {"graph", "build a neighborhood graph and dump it", run_graph_cmd},
      {"quality", "empirical cut/volume/Ncut of a hyperplane partition",
       run_quality},
      {"limits", "limit functionals for a density and hyperplane", run_limits},
      {"sweep", "optimize the limit Ncut over hyperplane offsets", run_sweep},
      {"spectral", "normalized spectral bipartition of a graph", run_spectral},
      {"compare", "kNN vs r-graph clustering comparison study", run_compare},
      {"converge", "scaled Ncut convergence to its limit", run_converge},
      {"histogram", "1D cluster-boundary histograms per graph family",
       run_histogram},
  };
  for (const Sub& sub : subs) {
    CLI::App* cmd = app.add_subcommand(sub.name, sub.help);
    add_common(cmd, opts);
    cmd->callback([&opts, &sub]() {
      const int rc = sub.fn(opts);
      if (rc != 0) throw CLI::RuntimeError(rc);
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;  // bad invocation or config path
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
