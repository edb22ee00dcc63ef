#ifndef GEOCUT_GRAPH_HPP_
#define GEOCUT_GRAPH_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "geocut/types.hpp"

namespace geocut {

enum class WeightKind { unit, gaussian };

// Distance-decay edge weight. Gaussian uses the full d-dimensional
// normalization, so f(0) = (2 pi sigma^2)^(-d/2).
struct WeightFunction {
  WeightKind kind = WeightKind::unit;
  double sigma = 0.0;
  int dim = 1;

  double operator()(double dist) const;
  bool is_gaussian() const { return kind == WeightKind::gaussian; }

  static WeightFunction unit();
  static WeightFunction gaussian(double sigma, int dim);
};

enum class GraphKind {
  knn_directed,
  knn_symmetric,
  knn_mutual,
  r_neighborhood,
  complete
};

// Declared asymptotic regime for Gaussian weights on kNN/r graphs; at finite n
// the ratio condition is not decidable from data, so the caller states it.
enum class GaussianRegime { unspecified, r_dominates_sigma, sigma_dominates_r };

struct GraphSpec {
  GraphKind kind = GraphKind::r_neighborhood;
  int k = 0;         // knn kinds
  double r = 0.0;    // r_neighborhood
  WeightFunction weight;
  GaussianRegime regime = GaussianRegime::unspecified;
};

struct Edge {
  int32_t i = 0;
  int32_t j = 0;
  double w = 0.0;
};

// Weighted neighborhood graph in coordinate-list form. Undirected graphs
// store each unordered pair once with i < j, ordered lexicographically;
// directed graphs group edges by source, neighbors by (distance, index).
struct NeighborhoodGraph {
  int n = 0;
  int dim = 0;
  bool directed = false;
  std::vector<Edge> edges;
  GraphSpec spec;

  double total_weight() const;
};

NeighborhoodGraph build_knn(const Matrix& points, int k, GraphKind variant,
                            const WeightFunction& weight);
NeighborhoodGraph build_r_graph(const Matrix& points, double r,
                                const WeightFunction& weight);
NeighborhoodGraph build_complete(const Matrix& points,
                                 const WeightFunction& weight);

// mean distance to the k-th nearest neighbor over all points
double mean_knn_radius(const Matrix& points, int k);

// directed kNN graph -> symmetric-variant undirected graph; undirected input
// is returned unchanged
NeighborhoodGraph symmetrize(const NeighborhoodGraph& graph);

std::string graph_kind_name(GraphKind kind);
GraphKind graph_kind_from_name(const std::string& name);

void write_graph_csv(std::ostream& os, const NeighborhoodGraph& graph);
NeighborhoodGraph read_graph_csv(std::istream& is);

}  // namespace geocut

#endif  // GEOCUT_GRAPH_HPP_
