#include "geocut/spectral.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "geocut/errors.hpp"
#include "geocut/rng.hpp"

namespace geocut {

namespace {

std::vector<double> degree_vector(const NeighborhoodGraph& graph) {
  std::vector<double> deg(graph.n, 0.0);
  for (const Edge& e : graph.edges) {
    deg[e.i] += e.w;
    deg[e.j] += e.w;
  }
  return deg;
}

// compressed adjacency for the Ncut threshold sweep
struct Adjacency {
  std::vector<int> offsets;
  std::vector<int> cols;
  std::vector<double> weights;
  std::vector<double> deg;

  explicit Adjacency(const NeighborhoodGraph& graph) {
    deg = degree_vector(graph);
    offsets.assign(graph.n + 1, 0);
    for (const Edge& e : graph.edges) {
      ++offsets[e.i + 1];
      ++offsets[e.j + 1];
    }
    for (int i = 0; i < graph.n; ++i) offsets[i + 1] += offsets[i];
    cols.resize(offsets.back());
    weights.resize(offsets.back());
    std::vector<int> fill(offsets.begin(), offsets.end() - 1);
    for (const Edge& e : graph.edges) {
      cols[fill[e.i]] = e.j;
      weights[fill[e.i]++] = e.w;
      cols[fill[e.j]] = e.i;
      weights[fill[e.j]++] = e.w;
    }
  }
};

}  // namespace

std::vector<int> connected_components(const NeighborhoodGraph& graph) {
  std::vector<std::vector<int>> adj(graph.n);
  for (const Edge& e : graph.edges) {
    adj[e.i].push_back(e.j);
    adj[e.j].push_back(e.i);
  }
  std::vector<int> comp(graph.n, -1);
  int next = 0;
  std::vector<int> stack;
  for (int s = 0; s < graph.n; ++s) {
    if (comp[s] >= 0) continue;
    comp[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      const int x = stack.back();
      stack.pop_back();
      for (int y : adj[x])
        if (comp[y] < 0) {
          comp[y] = next;
          stack.push_back(y);
        }
    }
    ++next;
  }
  return comp;
}

Eigen::SparseMatrix<double> normalized_laplacian(const NeighborhoodGraph& graph) {
  if (graph.directed)
    throw PreconditionError(
        "normalized_laplacian expects an undirected graph; symmetrize first");
  const std::vector<double> deg = degree_vector(graph);
  for (int i = 0; i < graph.n; ++i)
    if (!(deg[i] > 0.0))
      throw IsolatedNodeError("node " + std::to_string(i) +
                              " has zero degree; graph parameters too small");

  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(graph.edges.size() * 2 + graph.n);
  for (int i = 0; i < graph.n; ++i) trips.emplace_back(i, i, 1.0);
  for (const Edge& e : graph.edges) {
    const double v = -e.w / std::sqrt(deg[e.i] * deg[e.j]);
    trips.emplace_back(e.i, e.j, v);
    trips.emplace_back(e.j, e.i, v);
  }
  Eigen::SparseMatrix<double> lap(graph.n, graph.n);
  lap.setFromTriplets(trips.begin(), trips.end());
  return lap;
}

namespace {

struct EigenPair {
  double lambda2 = 0.0;
  Vector v2;
  double residual = 0.0;
};

EigenPair dense_second_eigenpair(const Eigen::SparseMatrix<double>& lap) {
  Eigen::MatrixXd dense = Eigen::MatrixXd(lap);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dense);
  EigenPair out;
  out.lambda2 = solver.eigenvalues()[1];
  out.v2 = solver.eigenvectors().col(1);
  out.residual = (lap * out.v2 - out.lambda2 * out.v2).norm();
  return out;
}

// Lanczos with full reorthogonalization on M = 2I - L_sym, deflating the
// known top eigenvector D^{1/2} 1. The second-largest Ritz pair of M is the
// second-smallest eigenpair of L_sym.
EigenPair lanczos_second_eigenpair(const Eigen::SparseMatrix<double>& lap,
                                   const std::vector<double>& deg,
                                   const SpectralConfig& config,
                                   uint64_t seed) {
  const int n = static_cast<int>(lap.rows());
  Vector q1(n);
  for (int i = 0; i < n; ++i) q1[i] = std::sqrt(deg[i]);
  q1.normalize();

  auto apply_m = [&](const Vector& x) -> Vector { return 2.0 * x - lap * x; };

  const int krylov_cap = std::min(n - 1, 300);
  Rng rng(seed);
  Vector start(n);
  for (int i = 0; i < n; ++i) start[i] = rng.normal();

  int total_iterations = 0;
  EigenPair best;
  Vector v = start;
  while (total_iterations < config.max_iterations) {
    // orthogonalize the start vector against the deflated direction
    v -= q1.dot(v) * q1;
    double norm = v.norm();
    if (norm < 1e-300) {
      for (int i = 0; i < n; ++i) v[i] = rng.normal();
      continue;
    }
    v /= norm;

    std::vector<Vector> basis;
    std::vector<double> alpha, beta;  // beta[j] couples v_j and v_{j+1}
    basis.push_back(v);
    Vector w;
    int m = 0;
    bool breakdown = false;
    for (; m < krylov_cap && total_iterations < config.max_iterations; ++m) {
      ++total_iterations;
      w = apply_m(basis[m]);
      if (m > 0) w -= beta[m - 1] * basis[m - 1];
      const double a = basis[m].dot(w);
      alpha.push_back(a);
      w -= a * basis[m];
      // full reorthogonalization, including the deflated direction
      for (int pass = 0; pass < 2; ++pass) {
        w -= q1.dot(w) * q1;
        for (const Vector& b : basis) w -= b.dot(w) * b;
      }
      const double bnorm = w.norm();
      if (bnorm < 1e-14) {
        breakdown = true;
        ++m;
        break;
      }
      beta.push_back(bnorm);
      basis.push_back(w / bnorm);
    }

    if (m == 0) break;  // iteration budget exhausted before any step

    // Ritz pair from the tridiagonal matrix
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
      t(i, i) = alpha[i];
      if (i + 1 < m) {
        t(i, i + 1) = beta[i];
        t(i + 1, i) = beta[i];
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(t);
    const int top = m - 1;  // largest Ritz value of M
    Vector y = solver.eigenvectors().col(top);
    Vector ritz = Vector::Zero(n);
    for (int i = 0; i < m; ++i) ritz += y[i] * basis[i];
    ritz -= q1.dot(ritz) * q1;
    ritz.normalize();

    const double theta = solver.eigenvalues()[top];
    best.lambda2 = 2.0 - theta;
    best.v2 = ritz;
    best.residual = (lap * ritz - best.lambda2 * ritz).norm();
    if (best.residual <= config.eig_tolerance || breakdown) return best;
    v = ritz;  // restart from the current Ritz vector
  }
  if (best.residual > config.eig_tolerance)
    throw NoConvergenceError("eigenresidual " + std::to_string(best.residual) +
                             " above tolerance after max_iterations");
  return best;
}

SpectralResult component_split(const NeighborhoodGraph& graph,
                               const std::vector<int>& comp, int n_components) {
  std::vector<long long> size(n_components, 0);
  for (int c : comp) ++size[c];
  const int largest = static_cast<int>(
      std::max_element(size.begin(), size.end()) - size.begin());

  SpectralResult result;
  result.disconnected = true;
  result.n_components = n_components;
  result.partition.labels.resize(graph.n);
  for (int i = 0; i < graph.n; ++i)
    result.partition.labels[i] = (comp[i] == largest);
  result.lambda2 = 0.0;  // L_sym has a repeated zero eigenvalue
  const double volp = volume_value(graph, result.partition, true);
  const double volm = volume_value(graph, result.partition, false);
  const double cut = cut_value(graph, result.partition);
  result.ncut = (volp > 0.0 && volm > 0.0)
                    ? cut * (1.0 / volp + 1.0 / volm)
                    : std::numeric_limits<double>::infinity();
  return result;
}

}  // namespace

SpectralResult spectral_bipartition(const NeighborhoodGraph& graph,
                                    const SpectralConfig& config,
                                    uint64_t seed) {
  if (graph.n < 2) throw PreconditionError("need at least two nodes");
  NeighborhoodGraph symmetrized;
  if (graph.directed) symmetrized = symmetrize(graph);
  const NeighborhoodGraph& und = graph.directed ? symmetrized : graph;

  const std::vector<int> comp = connected_components(und);
  const int n_components = *std::max_element(comp.begin(), comp.end()) + 1;
  if (n_components > 1) return component_split(und, comp, n_components);

  const Eigen::SparseMatrix<double> lap = normalized_laplacian(und);
  const Adjacency adj(und);
  EigenPair pair;
  if (und.n <= 64)
    pair = dense_second_eigenpair(lap);
  else
    pair = lanczos_second_eigenpair(lap, adj.deg, config, seed);

  // embedding via D^{-1/2}, nodes ordered by (value, index)
  const int n = und.n;
  std::vector<std::pair<double, int>> order(n);
  for (int i = 0; i < n; ++i)
    order[i] = {pair.v2[i] / std::sqrt(adj.deg[i]), i};
  std::sort(order.begin(), order.end());

  // exact 1D 2-means on the embedding values: over the n-1 sorted splits,
  // minimize the within-cluster sum of squares (prefix-sum closed form).
  // Selecting by the k-means objective instead of the noisy per-threshold
  // Ncut keeps the split stable when the Ncut landscape is flat, which is
  // exactly the 1D kNN situation.
  std::vector<double> prefix(n + 1, 0.0), prefix2(n + 1, 0.0);
  for (int t = 0; t < n; ++t) {
    prefix[t + 1] = prefix[t] + order[t].first;
    prefix2[t + 1] = prefix2[t] + order[t].first * order[t].first;
  }
  int best_t = -1;
  double best_sse = std::numeric_limits<double>::infinity();
  for (int t = 0; t < n - 1; ++t) {
    const double nl = t + 1;
    const double nr = n - t - 1;
    const double sl = prefix[t + 1];
    const double sr = prefix[n] - sl;
    const double sse =
        (prefix2[t + 1] - sl * sl / nl) + (prefix2[n] - prefix2[t + 1] - sr * sr / nr);
    if (sse < best_sse) {
      best_sse = sse;
      best_t = t;
    }
  }
  if (best_t < 0)
    throw ZeroVolumeError("no usable split along the embedding");

  SpectralResult result;
  result.partition.labels.resize(n);
  for (int t = 0; t < n; ++t)
    result.partition.labels[order[t].second] = (t > best_t);
  result.lambda2 = pair.lambda2;
  result.threshold_index = best_t;
  result.eig_residual = pair.residual;
  result.embedding.resize(n);
  for (int i = 0; i < n; ++i)
    result.embedding[i] = pair.v2[i] / std::sqrt(adj.deg[i]);

  const double volp = volume_value(und, result.partition, true);
  const double volm = volume_value(und, result.partition, false);
  if (!(volp > 0.0) || !(volm > 0.0))
    throw ZeroVolumeError("a side of the spectral split has no weight");
  result.ncut =
      cut_value(und, result.partition) * (1.0 / volp + 1.0 / volm);
  return result;
}

}  // namespace geocut
