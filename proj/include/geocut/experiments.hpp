#ifndef GEOCUT_EXPERIMENTS_HPP_
#define GEOCUT_EXPERIMENTS_HPP_

#include <cstdint>
#include <vector>

#include "geocut/density.hpp"
#include "geocut/graph.hpp"
#include "geocut/limits.hpp"
#include "geocut/quality.hpp"
#include "geocut/spectral.hpp"

namespace geocut {

// minimum over the two label permutations of the disagreement fraction
double minimal_matching_distance(const Labels& a, const Labels& b);

struct BoundaryResult {
  double boundary = 0.0;
  bool interleaved = false;  // labels were not an interval split
  int disagreements = 0;     // points violating the majority split
};

// 1D cluster boundary: the middle between the rightmost point of the left
// cluster and the leftmost point of the right cluster. Interleaved labelings
// fall back to the best majority split and set the flag.
BoundaryResult cluster_boundary_1d(const Matrix& points, const Labels& labels);

// value(n) = scale * n^pow_n * (log n)^pow_log; covers the parameter
// schedules k_n, r_n and sigma_n used in the convergence studies
struct ParamSchedule {
  double scale = 1.0;
  double pow_n = 0.0;
  double pow_log = 0.0;

  double value(int n) const;
  int value_int(int n) const;  // rounded, clamped to [1, n-1]
};

// empirical graph for a limit family; kNN kinds take k, r kinds take r,
// Gaussian weights take sigma (with the regime implied by the family)
NeighborhoodGraph build_family_graph(GraphFamily family, const Matrix& points,
                                     GraphKind knn_kind, int k, double r,
                                     double sigma);

struct RobustSplit {
  Labels labels;
  bool flagged = false;  // graph was disconnected
  double lambda2 = 0.0;
  double ncut = 0.0;
};

// Spectral bipartition that tolerates stray components: a disconnected graph
// (small r regularly strands a few support-edge points) is clustered on its
// largest component and the remaining points take the label of their nearest
// clustered point. Such runs are flagged.
RobustSplit robust_bipartition(const NeighborhoodGraph& graph,
                               const Matrix& points,
                               const SpectralConfig& config = {});

struct DistanceStat {
  double mean = 0.0;
  double std = 0.0;
  long long pairs = 0;
};

struct PairDistance {
  int rep_a = 0;
  int rep_b = 0;
  double value = 0.0;
};

struct ComparisonConfig {
  int n = 2000;
  int reps = 20;
  int k = 30;
  bool r_from_mean_knn = true;  // r = mean k-NN radius of each rep's sample
  double r_fixed = 0.0;
  uint64_t base_seed = 1;
  int threads = 0;
};

struct ComparisonResult {
  // within-family distances over unordered rep pairs (cross-sample labelings
  // are matched through nearest-neighbor extension, symmetrized)
  DistanceStat d_knn;
  DistanceStat d_r;
  // cross-family distance over same-rep pairs (same sample, direct)
  DistanceStat d_cross;
  // secondary pairing: cross-family over all rep pairs
  DistanceStat d_cross_all_pairs;
  // the individual pair distances behind the four statistics
  std::vector<PairDistance> knn_pairs;
  std::vector<PairDistance> r_pairs;
  std::vector<PairDistance> cross_pairs;
  std::vector<PairDistance> cross_all_pairs;
  std::vector<double> r_values;       // per-rep r-graph radius
  std::vector<int> flagged_reps;      // disconnected graphs, excluded above
  std::vector<Matrix> samples;        // per rep
  std::vector<Labels> knn_labels;
  std::vector<Labels> r_labels;
  std::vector<double> knn_boundaries;  // d = 1 only
  std::vector<double> r_boundaries;
};

// The graph-comparison study: per rep sample n points, cluster with the
// symmetric kNN graph and the r-graph, then aggregate minimal matching
// distances within and across graph types.
ComparisonResult run_comparison(const Density& density,
                                const ComparisonConfig& config);

struct ConvergenceConfig {
  GraphFamily family = GraphFamily::r_unweighted;
  GraphKind knn_kind = GraphKind::knn_directed;  // variant for kNN families
  std::vector<int> n_grid;
  ParamSchedule schedule;        // k_n for kNN families, r_n for r families
  ParamSchedule sigma_schedule;  // Gaussian families and the complete graph
  int reps = 10;
  int axis = 0;
  double offset = 0.5;
  uint64_t base_seed = 1;
  int threads = 0;
};

struct ConvergenceRow {
  int n = 0;
  double param = 0.0;  // k_n or r_n actually used
  double sigma = 0.0;
  double scaled_ncut_mean = 0.0;
  double scaled_ncut_std = 0.0;
  double mean_abs_error = 0.0;
};

struct ConvergenceResult {
  double limit = 0.0;  // ncut_lim for the family, density and hyperplane
  std::vector<ConvergenceRow> rows;
};

// Scaled empirical Ncut of the hyperplane partition against its limit along
// a schedule of sample sizes.
ConvergenceResult run_convergence(const Density& density,
                                  const ConvergenceConfig& config);

struct HistogramConfig {
  std::vector<GraphFamily> families = {GraphFamily::knn_unweighted,
                                       GraphFamily::r_unweighted};
  int n = 2000;
  int reps = 100;
  int k = 30;
  double sweep_step = 1e-3;
  uint64_t base_seed = 1;
  int threads = 0;
};

struct FamilyHistogram {
  GraphFamily family = GraphFamily::knn_unweighted;
  std::vector<double> boundaries;  // one per rep
  double mean = 0.0;
  double std = 0.0;
  double sweep_best_offset = 0.0;  // limit-predicted optimum for overlay
  int interleaved_count = 0;
  std::vector<int> flagged_reps;
};

struct HistogramResult {
  std::vector<FamilyHistogram> families;
};

// 1D boundary histograms: per rep and family, spectral bipartition and the
// cluster boundary, with the sweep-predicted optimal offset for overlay.
HistogramResult run_boundary_histogram(const Density& density,
                                       const HistogramConfig& config);

}  // namespace geocut

#endif  // GEOCUT_EXPERIMENTS_HPP_
