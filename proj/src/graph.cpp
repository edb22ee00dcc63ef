#include "geocut/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "geocut/errors.hpp"
#include "geocut/kdtree.hpp"

namespace geocut {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

void check_k(int k, int n) {
  if (k < 1) throw PreconditionError("k must be >= 1");
  if (k >= n) throw KTooLargeError("k must be < number of points");
}

}  // namespace

double WeightFunction::operator()(double dist) const {
  if (kind == WeightKind::unit) return 1.0;
  const double s2 = sigma * sigma;
  return std::pow(kTwoPi * s2, -0.5 * dim) * std::exp(-0.5 * dist * dist / s2);
}

WeightFunction WeightFunction::unit() { return {WeightKind::unit, 0.0, 1}; }

WeightFunction WeightFunction::gaussian(double sigma, int dim) {
  if (!(sigma > 0.0)) throw PreconditionError("gaussian sigma must be > 0");
  return {WeightKind::gaussian, sigma, dim};
}

double NeighborhoodGraph::total_weight() const {
  double s = 0.0;
  for (const Edge& e : edges) s += e.w;
  return s;
}

NeighborhoodGraph build_knn(const Matrix& points, int k, GraphKind variant,
                            const WeightFunction& weight) {
  const int n = static_cast<int>(points.rows());
  const int d = static_cast<int>(points.cols());
  check_k(k, n);
  if (variant != GraphKind::knn_directed && variant != GraphKind::knn_symmetric &&
      variant != GraphKind::knn_mutual)
    throw PreconditionError("variant must be a knn kind");

  NeighborhoodGraph g;
  g.n = n;
  g.dim = d;
  g.directed = (variant == GraphKind::knn_directed);
  g.spec.kind = variant;
  g.spec.k = k;
  g.spec.weight = weight;

  KdTree tree(points);
  std::vector<std::pair<double, int>> nbrs;
  std::vector<double> q(d);

  if (g.directed) {
    g.edges.reserve(static_cast<size_t>(n) * k);
    for (int i = 0; i < n; ++i) {
      for (int c = 0; c < d; ++c) q[c] = points(i, c);
      tree.knn(q.data(), k, i, nbrs);
      for (const auto& [d2, j] : nbrs)
        g.edges.push_back({i, j, weight(std::sqrt(d2))});
    }
    return g;
  }

  // undirected variants: collect normalized pairs from the directed lists;
  // union = unique pairs, intersection = pairs seen from both endpoints
  std::vector<std::pair<int32_t, int32_t>> pairs;
  pairs.reserve(static_cast<size_t>(n) * k);
  for (int i = 0; i < n; ++i) {
    for (int c = 0; c < d; ++c) q[c] = points(i, c);
    tree.knn(q.data(), k, i, nbrs);
    for (const auto& [d2, j] : nbrs) {
      (void)d2;
      pairs.emplace_back(std::min(i, j), std::max(i, j));
    }
  }
  std::sort(pairs.begin(), pairs.end());
  const bool mutual = (variant == GraphKind::knn_mutual);
  for (size_t t = 0; t < pairs.size();) {
    const auto p = pairs[t];
    size_t u = t;
    while (u < pairs.size() && pairs[u] == p) ++u;
    const bool reciprocated = (u - t) == 2;
    if (!mutual || reciprocated) {
      const double dist = point_distance(points, p.first, p.second);
      g.edges.push_back({p.first, p.second, weight(dist)});
    }
    t = u;
  }
  return g;
}

NeighborhoodGraph build_r_graph(const Matrix& points, double r,
                                const WeightFunction& weight) {
  if (!(r > 0.0)) throw PreconditionError("radius must be > 0");
  const int n = static_cast<int>(points.rows());
  const int d = static_cast<int>(points.cols());

  NeighborhoodGraph g;
  g.n = n;
  g.dim = d;
  g.directed = false;
  g.spec.kind = GraphKind::r_neighborhood;
  g.spec.r = r;
  g.spec.weight = weight;

  KdTree tree(points);
  std::vector<int> nbrs;
  std::vector<double> q(d);
  for (int i = 0; i < n; ++i) {
    for (int c = 0; c < d; ++c) q[c] = points(i, c);
    tree.radius(q.data(), r, i, nbrs);
    for (int j : nbrs) {
      if (j <= i) continue;  // store each pair once, i < j
      g.edges.push_back({i, j, weight(point_distance(points, i, j))});
    }
  }
  return g;
}

NeighborhoodGraph build_complete(const Matrix& points,
                                 const WeightFunction& weight) {
  if (!weight.is_gaussian())
    throw UnitWeightOnCompleteError(
        "complete graph requires the gaussian weight function");
  const int n = static_cast<int>(points.rows());

  NeighborhoodGraph g;
  g.n = n;
  g.dim = static_cast<int>(points.cols());
  g.directed = false;
  g.spec.kind = GraphKind::complete;
  g.spec.weight = weight;

  g.edges.reserve(static_cast<size_t>(n) * (n - 1) / 2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      g.edges.push_back({i, j, weight(point_distance(points, i, j))});
  return g;
}

double mean_knn_radius(const Matrix& points, int k) {
  const int n = static_cast<int>(points.rows());
  const int d = static_cast<int>(points.cols());
  check_k(k, n);
  KdTree tree(points);
  std::vector<std::pair<double, int>> nbrs;
  std::vector<double> q(d);
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int c = 0; c < d; ++c) q[c] = points(i, c);
    tree.knn(q.data(), k, i, nbrs);
    sum += std::sqrt(nbrs.back().first);
  }
  return sum / static_cast<double>(n);
}

NeighborhoodGraph symmetrize(const NeighborhoodGraph& graph) {
  if (!graph.directed) return graph;
  NeighborhoodGraph g;
  g.n = graph.n;
  g.dim = graph.dim;
  g.directed = false;
  g.spec = graph.spec;
  g.spec.kind = GraphKind::knn_symmetric;

  std::vector<std::pair<std::pair<int32_t, int32_t>, double>> pairs;
  pairs.reserve(graph.edges.size());
  for (const Edge& e : graph.edges)
    pairs.push_back({{std::min(e.i, e.j), std::max(e.i, e.j)}, e.w});
  std::sort(pairs.begin(), pairs.end());
  for (size_t t = 0; t < pairs.size();) {
    size_t u = t;
    while (u < pairs.size() && pairs[u].first == pairs[t].first) ++u;
    g.edges.push_back({pairs[t].first.first, pairs[t].first.second, pairs[t].second});
    t = u;
  }
  return g;
}

std::string graph_kind_name(GraphKind kind) {
  switch (kind) {
    case GraphKind::knn_directed: return "knn_directed";
    case GraphKind::knn_symmetric: return "knn_symmetric";
    case GraphKind::knn_mutual: return "knn_mutual";
    case GraphKind::r_neighborhood: return "r_neighborhood";
    case GraphKind::complete: return "complete";
  }
  return "unknown";
}

GraphKind graph_kind_from_name(const std::string& name) {
  if (name == "knn_directed") return GraphKind::knn_directed;
  if (name == "knn_symmetric") return GraphKind::knn_symmetric;
  if (name == "knn_mutual") return GraphKind::knn_mutual;
  if (name == "r_neighborhood") return GraphKind::r_neighborhood;
  if (name == "complete") return GraphKind::complete;
  throw ConfigError("unknown graph kind '" + name + "'");
}

void write_graph_csv(std::ostream& os, const NeighborhoodGraph& graph) {
  os << "# n=" << graph.n << " directed=" << (graph.directed ? 1 : 0)
     << " kind=" << graph_kind_name(graph.spec.kind) << "\n";
  char buf[64];
  for (const Edge& e : graph.edges) {
    std::snprintf(buf, sizeof(buf), "%d,%d,%.17g\n", e.i, e.j, e.w);
    os << buf;
  }
}

NeighborhoodGraph read_graph_csv(std::istream& is) {
  NeighborhoodGraph g;
  std::string line;
  if (!std::getline(is, line) || line.rfind("# n=", 0) != 0)
    throw ConfigError("graph csv must start with '# n=...' header");
  {
    std::istringstream hs(line.substr(1));
    std::string tok;
    while (hs >> tok) {
      const auto eq = tok.find('=');
      if (eq == std::string::npos) continue;
      const std::string key = tok.substr(0, eq);
      const std::string val = tok.substr(eq + 1);
      if (key == "n") g.n = std::stoi(val);
      else if (key == "directed") g.directed = (val == "1");
      else if (key == "kind") g.spec.kind = graph_kind_from_name(val);
    }
  }
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    Edge e;
    if (std::sscanf(line.c_str(), "%d,%d,%lf", &e.i, &e.j, &e.w) != 3)
      throw ConfigError("bad graph csv line: " + line);
    g.edges.push_back(e);
  }
  return g;
}

}  // namespace geocut
