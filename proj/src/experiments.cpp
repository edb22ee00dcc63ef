#include "geocut/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "geocut/errors.hpp"
#include "geocut/kdtree.hpp"
#include "geocut/parallel.hpp"

namespace geocut {

double minimal_matching_distance(const Labels& a, const Labels& b) {
  if (a.size() != b.size())
    throw LengthMismatchError("labelings must have equal length");
  if (a.size() == 0) throw PreconditionError("labelings must be nonempty");
  const long long n = a.size();
  long long h = 0;
  for (long long i = 0; i < n; ++i) h += (a[i] != b[i]) ? 1 : 0;
  return static_cast<double>(std::min(h, n - h)) / static_cast<double>(n);
}

BoundaryResult cluster_boundary_1d(const Matrix& points, const Labels& labels) {
  if (points.cols() != 1) throw PreconditionError("points must be 1D");
  const int n = static_cast<int>(points.rows());
  if (labels.size() != n) throw LengthMismatchError("labels length mismatch");
  bool has_true = false, has_false = false;
  for (int i = 0; i < n; ++i) (labels[i] ? has_true : has_false) = true;
  if (!has_true || !has_false)
    throw SingleClusterError("both cluster labels must be present");

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int i, int j) {
    return points(i, 0) < points(j, 0) ||
           (points(i, 0) == points(j, 0) && i < j);
  });

  int transitions = 0;
  int transition_pos = -1;
  for (int t = 0; t + 1 < n; ++t) {
    if (labels[order[t]] != labels[order[t + 1]]) {
      ++transitions;
      transition_pos = t;
    }
  }
  BoundaryResult result;
  if (transitions == 1) {
    result.boundary = 0.5 * (points(order[transition_pos], 0) +
                             points(order[transition_pos + 1], 0));
    return result;
  }

  // interleaved labels: best majority split over the n-1 positions
  std::vector<int> prefix_true(n + 1, 0);
  for (int t = 0; t < n; ++t)
    prefix_true[t + 1] = prefix_true[t] + (labels[order[t]] ? 1 : 0);
  const int total_true = prefix_true[n];
  int best_s = 1;
  int best_mismatch = n + 1;
  for (int s = 1; s < n; ++s) {
    const int true_left = prefix_true[s];
    const int false_left = s - true_left;
    const int true_right = total_true - true_left;
    const int false_right = (n - s) - false_left;
    const int mismatch =
        std::min(true_left + false_right, false_left + true_right);
    if (mismatch < best_mismatch) {
      best_mismatch = mismatch;
      best_s = s;
    }
  }
  result.interleaved = true;
  result.disagreements = best_mismatch;
  result.boundary =
      0.5 * (points(order[best_s - 1], 0) + points(order[best_s], 0));
  return result;
}

double ParamSchedule::value(int n) const {
  return scale * std::pow(static_cast<double>(n), pow_n) *
         std::pow(std::log(static_cast<double>(n)), pow_log);
}

int ParamSchedule::value_int(int n) const {
  const int v = static_cast<int>(std::llround(value(n)));
  return std::max(1, std::min(v, n - 1));
}

NeighborhoodGraph build_family_graph(GraphFamily family, const Matrix& points,
                                     GraphKind knn_kind, int k, double r,
                                     double sigma) {
  const int d = static_cast<int>(points.cols());
  switch (family) {
    case GraphFamily::knn_unweighted:
      return build_knn(points, k, knn_kind, WeightFunction::unit());
    case GraphFamily::knn_gauss_r_dom: {
      NeighborhoodGraph g =
          build_knn(points, k, knn_kind, WeightFunction::gaussian(sigma, d));
      g.spec.regime = GaussianRegime::r_dominates_sigma;
      return g;
    }
    case GraphFamily::knn_gauss_sigma_dom: {
      NeighborhoodGraph g =
          build_knn(points, k, knn_kind, WeightFunction::gaussian(sigma, d));
      g.spec.regime = GaussianRegime::sigma_dominates_r;
      return g;
    }
    case GraphFamily::r_unweighted:
      return build_r_graph(points, r, WeightFunction::unit());
    case GraphFamily::r_gauss_r_dom: {
      NeighborhoodGraph g =
          build_r_graph(points, r, WeightFunction::gaussian(sigma, d));
      g.spec.regime = GaussianRegime::r_dominates_sigma;
      return g;
    }
    case GraphFamily::r_gauss_sigma_dom: {
      NeighborhoodGraph g =
          build_r_graph(points, r, WeightFunction::gaussian(sigma, d));
      g.spec.regime = GaussianRegime::sigma_dominates_r;
      return g;
    }
    case GraphFamily::complete_gauss:
      return build_complete(points, WeightFunction::gaussian(sigma, d));
  }
  throw PreconditionError("unknown family");
}

RobustSplit robust_bipartition(const NeighborhoodGraph& graph,
                               const Matrix& points,
                               const SpectralConfig& config) {
  const std::vector<int> comp = connected_components(graph);
  const int n_components = *std::max_element(comp.begin(), comp.end()) + 1;

  RobustSplit out;
  if (n_components == 1) {
    const SpectralResult res = spectral_bipartition(graph, config);
    out.labels = res.partition.labels;
    out.lambda2 = res.lambda2;
    out.ncut = res.ncut;
    return out;
  }

  out.flagged = true;
  std::vector<long long> size(n_components, 0);
  for (int c : comp) ++size[c];

  // components below the stray cap are attached to their nearest clustered
  // point afterwards; substantial components carry the cluster structure.
  // The 10% rule separates genuine modes from sparse-tail fragments, both of
  // which disconnect under small radii but play very different roles.
  const long long stray_cap = std::max<long long>(3, graph.n / 10);
  std::vector<int> order(n_components);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return size[a] > size[b] || (size[a] == size[b] && a < b);
  });
  int n_substantial = 0;
  for (int c = 0; c < n_components; ++c)
    if (size[c] >= stray_cap) ++n_substantial;
  if (n_substantial == 0) n_substantial = 1;  // keep at least the largest

  out.labels.resize(graph.n);
  std::vector<char> assigned(graph.n, 0);

  if (n_substantial >= 2) {
    // the graph already fell apart into clusters: the two largest
    // substantial components are the partition, everything else attaches
    const int first = order[0];
    const int second = order[1];
    for (int i = 0; i < graph.n; ++i) {
      if (comp[i] == first || comp[i] == second) {
        out.labels[i] = (comp[i] == first);
        assigned[i] = 1;
      }
    }
    out.ncut = 0.0;  // a zero-cut split
    out.lambda2 = 0.0;
  } else {
    // one substantial component: bipartition it spectrally
    const int largest = order[0];
    std::vector<int> to_sub(graph.n, -1);
    std::vector<int> members;
    for (int i = 0; i < graph.n; ++i)
      if (comp[i] == largest) {
        to_sub[i] = static_cast<int>(members.size());
        members.push_back(i);
      }
    NeighborhoodGraph sub;
    sub.n = static_cast<int>(members.size());
    sub.dim = graph.dim;
    sub.directed = graph.directed;
    sub.spec = graph.spec;
    for (const Edge& e : graph.edges)
      if (to_sub[e.i] >= 0 && to_sub[e.j] >= 0)
        sub.edges.push_back({to_sub[e.i], to_sub[e.j], e.w});

    const SpectralResult res = spectral_bipartition(sub, config);
    out.lambda2 = res.lambda2;
    out.ncut = res.ncut;
    for (int i = 0; i < graph.n; ++i)
      if (to_sub[i] >= 0) {
        out.labels[i] = res.partition.labels[to_sub[i]];
        assigned[i] = 1;
      }
  }

  // attach stray points to the nearest clustered point
  std::vector<int> anchors;
  for (int i = 0; i < graph.n; ++i)
    if (assigned[i]) anchors.push_back(i);
  Matrix anchor_points(anchors.size(), points.cols());
  for (size_t t = 0; t < anchors.size(); ++t)
    anchor_points.row(t) = points.row(anchors[t]);
  KdTree anchor_tree(anchor_points);
  std::vector<double> q(points.cols());
  for (int i = 0; i < graph.n; ++i) {
    if (assigned[i]) continue;
    for (int c = 0; c < points.cols(); ++c) q[c] = points(i, c);
    out.labels[i] = out.labels[anchors[anchor_tree.nearest(q.data(), -1)]];
  }
  return out;
}

namespace {

DistanceStat stat_from(const std::vector<double>& values) {
  DistanceStat s;
  s.pairs = static_cast<long long>(values.size());
  if (values.empty()) return s;
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) /
           static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.std = std::sqrt(ss / static_cast<double>(values.size() - 1));
  }
  return s;
}

// labels of `from` carried to the points of `to` by nearest neighbor
Labels extend_labels(const KdTree& from_tree, const Labels& from_labels,
                     const Matrix& to_points) {
  const int n = static_cast<int>(to_points.rows());
  const int d = static_cast<int>(to_points.cols());
  Labels out(n);
  std::vector<double> q(d);
  for (int i = 0; i < n; ++i) {
    for (int c = 0; c < d; ++c) q[c] = to_points(i, c);
    out[i] = from_labels[from_tree.nearest(q.data(), -1)];
  }
  return out;
}

double cross_sample_distance(const Matrix& pts_a, const Labels& lab_a,
                             const KdTree& tree_a, const Matrix& pts_b,
                             const Labels& lab_b, const KdTree& tree_b) {
  const double ab = minimal_matching_distance(extend_labels(tree_a, lab_a, pts_b), lab_b);
  const double ba = minimal_matching_distance(extend_labels(tree_b, lab_b, pts_a), lab_a);
  return 0.5 * (ab + ba);
}

}  // namespace

ComparisonResult run_comparison(const Density& density,
                                const ComparisonConfig& config) {
  if (config.reps < 1 || config.n < 10)
    throw PreconditionError("need reps >= 1 and n >= 10");
  const int reps = config.reps;

  ComparisonResult result;
  result.samples.resize(reps);
  result.knn_labels.resize(reps);
  result.r_labels.resize(reps);
  result.r_values.resize(reps);
  std::vector<char> flagged(reps, 0);
  const bool one_dim = density.dim() == 1;
  if (one_dim) {
    result.knn_boundaries.resize(reps);
    result.r_boundaries.resize(reps);
  }

  parallel_for(reps, config.threads, [&](int rep) {
    const SampleSet sample = density.sample(config.n, config.base_seed + rep);
    const Matrix& pts = sample.points;

    const NeighborhoodGraph knn_graph =
        build_knn(pts, config.k, GraphKind::knn_symmetric, WeightFunction::unit());
    const double r = config.r_from_mean_knn ? mean_knn_radius(pts, config.k)
                                            : config.r_fixed;
    const NeighborhoodGraph r_graph =
        build_r_graph(pts, r, WeightFunction::unit());

    const RobustSplit knn_split = robust_bipartition(knn_graph, pts);
    const RobustSplit r_split = robust_bipartition(r_graph, pts);
    if (knn_split.flagged || r_split.flagged) flagged[rep] = 1;

    result.samples[rep] = pts;
    result.knn_labels[rep] = knn_split.labels;
    result.r_labels[rep] = r_split.labels;
    result.r_values[rep] = r;
    if (one_dim) {
      result.knn_boundaries[rep] =
          cluster_boundary_1d(pts, knn_split.labels).boundary;
      result.r_boundaries[rep] =
          cluster_boundary_1d(pts, r_split.labels).boundary;
    }
  });

  // flagged reps stay in the statistics (their stray points were labeled by
  // extension) but are listed so they can be reported separately
  std::vector<int> active;
  for (int rep = 0; rep < reps; ++rep) {
    if (flagged[rep]) result.flagged_reps.push_back(rep);
    active.push_back(rep);
  }

  std::vector<KdTree> trees;
  trees.reserve(reps);
  for (int rep = 0; rep < reps; ++rep) trees.emplace_back(result.samples[rep]);

  std::vector<double> v_knn, v_r, v_cross, v_cross_all;
  for (size_t a = 0; a < active.size(); ++a) {
    const int i = active[a];
    const double same =
        minimal_matching_distance(result.knn_labels[i], result.r_labels[i]);
    v_cross.push_back(same);
    result.cross_pairs.push_back({i, i, same});
    for (size_t b = a + 1; b < active.size(); ++b) {
      const int j = active[b];
      const double dk = cross_sample_distance(
          result.samples[i], result.knn_labels[i], trees[i], result.samples[j],
          result.knn_labels[j], trees[j]);
      const double dr = cross_sample_distance(
          result.samples[i], result.r_labels[i], trees[i], result.samples[j],
          result.r_labels[j], trees[j]);
      v_knn.push_back(dk);
      v_r.push_back(dr);
      result.knn_pairs.push_back({i, j, dk});
      result.r_pairs.push_back({i, j, dr});
    }
  }
  for (int i : active)
    for (int j : active) {
      const double d =
          (i == j) ? minimal_matching_distance(result.knn_labels[i],
                                               result.r_labels[i])
                   : cross_sample_distance(
                         result.samples[i], result.knn_labels[i], trees[i],
                         result.samples[j], result.r_labels[j], trees[j]);
      v_cross_all.push_back(d);
      result.cross_all_pairs.push_back({i, j, d});
    }

  result.d_knn = stat_from(v_knn);
  result.d_r = stat_from(v_r);
  result.d_cross = stat_from(v_cross);
  result.d_cross_all_pairs = stat_from(v_cross_all);
  return result;
}

ConvergenceResult run_convergence(const Density& density,
                                  const ConvergenceConfig& config) {
  if (config.n_grid.empty()) throw PreconditionError("n grid is empty");
  if (config.reps < 1) throw PreconditionError("reps must be >= 1");
  const Hyperplane plane =
      Hyperplane::axis(config.axis, config.offset, density.dim());
  ConvergenceResult result;
  result.limit = ncut_limit(density, plane, config.family).ncut_lim;

  const bool knn_family = config.family == GraphFamily::knn_unweighted ||
                          config.family == GraphFamily::knn_gauss_r_dom ||
                          config.family == GraphFamily::knn_gauss_sigma_dom;

  for (int n : config.n_grid) {
    const int k = knn_family ? config.schedule.value_int(n) : 0;
    const double r = knn_family ? 0.0 : config.schedule.value(n);
    const double sigma = config.sigma_schedule.value(n);

    std::vector<double> scaled(config.reps, 0.0);
    parallel_for(config.reps, config.threads, [&](int rep) {
      const SampleSet sample = density.sample(n, config.base_seed + rep);
      const NeighborhoodGraph graph = build_family_graph(
          config.family, sample.points, config.knn_kind, k, r, sigma);
      const Partition partition = induce_partition(sample.points, plane);
      scaled[rep] = ncut(graph, partition).scaled_ncut;
    });

    ConvergenceRow row;
    row.n = n;
    row.param = knn_family ? static_cast<double>(k) : r;
    row.sigma = sigma;
    const DistanceStat s = stat_from(scaled);
    row.scaled_ncut_mean = s.mean;
    row.scaled_ncut_std = s.std;
    double err = 0.0;
    for (double v : scaled) err += std::abs(v - result.limit);
    row.mean_abs_error = err / static_cast<double>(config.reps);
    result.rows.push_back(row);
  }
  return result;
}

HistogramResult run_boundary_histogram(const Density& density,
                                       const HistogramConfig& config) {
  if (density.dim() != 1)
    throw PreconditionError("boundary histograms are 1D only");
  if (config.reps < 1) throw PreconditionError("reps must be >= 1");

  HistogramResult result;
  for (GraphFamily family : config.families) {
    FamilyHistogram hist;
    hist.family = family;
    hist.boundaries.resize(config.reps);
    std::vector<char> interleaved(config.reps, 0);
    std::vector<char> flagged(config.reps, 0);

    parallel_for(config.reps, config.threads, [&](int rep) {
      const SampleSet sample = density.sample(config.n, config.base_seed + rep);
      const Matrix& pts = sample.points;
      const double r = mean_knn_radius(pts, config.k);
      const double sigma = r;  // bandwidth tied to the neighborhood scale
      const NeighborhoodGraph graph = build_family_graph(
          family, pts, GraphKind::knn_symmetric, config.k, r, sigma);
      const RobustSplit split = robust_bipartition(graph, pts);
      if (split.flagged) flagged[rep] = 1;
      const BoundaryResult b = cluster_boundary_1d(pts, split.labels);
      hist.boundaries[rep] = b.boundary;
      interleaved[rep] = b.interleaved ? 1 : 0;
    });

    for (int rep = 0; rep < config.reps; ++rep) {
      if (flagged[rep]) hist.flagged_reps.push_back(rep);
      hist.interleaved_count += interleaved[rep];
    }
    hist.mean = std::accumulate(hist.boundaries.begin(), hist.boundaries.end(),
                                0.0) /
                static_cast<double>(config.reps);
    double ss = 0.0;
    for (double b : hist.boundaries) ss += (b - hist.mean) * (b - hist.mean);
    hist.std = config.reps > 1
                   ? std::sqrt(ss / static_cast<double>(config.reps - 1))
                   : 0.0;

    // limit-predicted optimum on a fine grid strictly inside the support
    const Box& box = density.bounding_box();
    const double lo = box.lo[0], hi = box.hi[0];
    const double margin = 1e-6 * (hi - lo);
    std::vector<double> offsets;
    for (double b = lo + margin; b < hi - margin; b += config.sweep_step)
      offsets.push_back(b);
    hist.sweep_best_offset =
        optimal_cut_sweep(density, family, 0, offsets).best_offset;

    result.families.push_back(hist);
  }
  return result;
}

}  // namespace geocut
