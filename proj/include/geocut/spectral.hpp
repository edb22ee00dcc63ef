#ifndef GEOCUT_SPECTRAL_HPP_
#define GEOCUT_SPECTRAL_HPP_

#include <Eigen/SparseCore>

#include "geocut/graph.hpp"
#include "geocut/quality.hpp"

namespace geocut {

struct SpectralConfig {
  double eig_tolerance = 1e-8;
  int max_iterations = 4000;
};

// L_sym = I - D^{-1/2} W D^{-1/2} for an undirected graph; throws
// IsolatedNode on zero degrees. Eigenvalues lie in [0, 2].
Eigen::SparseMatrix<double> normalized_laplacian(const NeighborhoodGraph& graph);

struct SpectralResult {
  Partition partition;
  double lambda2 = 0.0;
  double ncut = 0.0;         // empirical Ncut of the returned partition
  int threshold_index = -1;  // split position along the sorted embedding
  double eig_residual = 0.0;
  bool disconnected = false;
  int n_components = 1;
  Vector embedding;          // D^{-1/2} v2, one value per node
};

// Normalized spectral bipartition: second eigenvector of L_sym (Lanczos with
// full reorthogonalization; dense solve for small graphs), embedded through
// D^{-1/2}, split at the threshold chosen by exact 1D 2-means over the n-1
// sorted-gap candidates. Directed input is symmetrized first. Disconnected
// graphs are split largest-component-vs-rest and flagged.
SpectralResult spectral_bipartition(const NeighborhoodGraph& graph,
                                    const SpectralConfig& config = {},
                                    uint64_t seed = 1);

// connected component id per node (0-based, by discovery from node 0)
std::vector<int> connected_components(const NeighborhoodGraph& graph);

}  // namespace geocut

#endif  // GEOCUT_SPECTRAL_HPP_
