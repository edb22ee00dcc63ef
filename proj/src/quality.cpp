#include "geocut/quality.hpp"

#include <cmath>
#include <cstdio>

#include "geocut/errors.hpp"

namespace geocut {

Hyperplane Hyperplane::axis(int axis, double offset, int dim) {
  if (axis < 0 || axis >= dim) throw PreconditionError("axis out of range");
  Hyperplane h;
  h.normal = Vector::Zero(dim);
  h.normal[axis] = 1.0;
  h.offset = offset;
  return h;
}

Hyperplane Hyperplane::general(Vector normal, double offset) {
  const double norm = normal.norm();
  if (!(norm > 0.0)) throw PreconditionError("hyperplane normal must be nonzero");
  Hyperplane h;
  h.normal = normal / norm;
  h.offset = offset / norm;
  return h;
}

int Hyperplane::axis_index() const {
  int axis = -1;
  for (int c = 0; c < normal.size(); ++c) {
    const double v = std::abs(normal[c]);
    if (v > 1e-12) {
      if (axis >= 0) return -1;
      axis = c;
    }
  }
  if (axis < 0) return -1;
  return std::abs(std::abs(normal[axis]) - 1.0) <= 1e-12 ? axis : -1;
}

bool Hyperplane::oriented_negative() const {
  const int axis = axis_index();
  return axis >= 0 && normal[axis] < 0.0;
}

Partition induce_partition(const Matrix& points, const Hyperplane& plane) {
  if (points.cols() != plane.normal.size())
    throw PreconditionError("hyperplane dimension mismatch");
  Partition p;
  p.labels.resize(points.rows());
  for (Eigen::Index i = 0; i < points.rows(); ++i)
    p.labels[i] = points.row(i).dot(plane.normal) >= plane.offset;
  return p;
}

namespace {

void check_labels(const NeighborhoodGraph& graph, const Partition& partition) {
  if (partition.labels.size() != graph.n)
    throw LengthMismatchError("partition length must equal node count");
}

}  // namespace

double cut_value(const NeighborhoodGraph& graph, const Partition& partition) {
  check_labels(graph, partition);
  double s = 0.0;
  for (const Edge& e : graph.edges)
    if (partition.labels[e.i] != partition.labels[e.j]) s += e.w;
  return graph.directed ? s : 2.0 * s;
}

double volume_value(const NeighborhoodGraph& graph, const Partition& partition,
                    bool plus_side) {
  check_labels(graph, partition);
  double s = 0.0;
  if (graph.directed) {
    for (const Edge& e : graph.edges)
      if (partition.labels[e.i] == plus_side) s += e.w;
  } else {
    for (const Edge& e : graph.edges) {
      if (partition.labels[e.i] == plus_side) s += e.w;
      if (partition.labels[e.j] == plus_side) s += e.w;
    }
  }
  return s;
}

ScalingFactors scaling_factors(const GraphSpec& spec, int n, int dim) {
  if (n < 1 || dim < 1) throw PreconditionError("n and dim must be >= 1");
  const double nn = static_cast<double>(n) * static_cast<double>(n);

  if (spec.kind == GraphKind::complete) {
    if (!spec.weight.is_gaussian())
      throw UnitWeightOnCompleteError("complete graph has gaussian weights only");
    return {nn * spec.weight.sigma, nn};
  }

  double r = 0.0;
  if (spec.kind == GraphKind::r_neighborhood) {
    if (!(spec.r > 0.0)) throw PreconditionError("spec.r must be > 0");
    r = spec.r;
  } else {
    if (spec.k < 1) throw PreconditionError("spec.k must be >= 1");
    r = std::pow(static_cast<double>(spec.k) / static_cast<double>(n),
                 1.0 / static_cast<double>(dim));
  }

  if (!spec.weight.is_gaussian())
    return {nn * std::pow(r, dim + 1), nn * std::pow(r, dim)};

  switch (spec.regime) {
    case GaussianRegime::r_dominates_sigma:
      return {nn * spec.weight.sigma, nn};
    case GaussianRegime::sigma_dominates_r: {
      const double corr = std::pow(spec.weight.sigma, -dim);
      return {corr * nn * std::pow(r, dim + 1), corr * nn * std::pow(r, dim)};
    }
    case GaussianRegime::unspecified:
      break;
  }
  throw RegimeUnspecifiedError(
      "gaussian weights on a kNN/r graph need a declared regime "
      "(r_dominates_sigma or sigma_dominates_r)");
}

QualityReport ncut(const NeighborhoodGraph& graph, const Partition& partition) {
  QualityReport rep;
  rep.cut = cut_value(graph, partition);
  rep.vol_plus = volume_value(graph, partition, true);
  rep.vol_minus = volume_value(graph, partition, false);
  if (!(rep.vol_plus > 0.0) || !(rep.vol_minus > 0.0))
    throw ZeroVolumeError("a side of the partition has no outgoing weight");
  rep.ncut = rep.cut * (1.0 / rep.vol_plus + 1.0 / rep.vol_minus);
  rep.cheeger = rep.cut / std::min(rep.vol_plus, rep.vol_minus);
  const ScalingFactors s = scaling_factors(graph.spec, graph.n, graph.dim);
  rep.s_cut = s.s_cut;
  rep.s_vol = s.s_vol;
  rep.scaled_ncut = s.s_vol / s.s_cut * rep.ncut;
  rep.scaled_cheeger = s.s_vol / s.s_cut * rep.cheeger;
  return rep;
}

namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace

std::string quality_json(const QualityReport& r) {
  std::string s = "{";
  s += "\"cut\": " + fmt(r.cut);
  s += ", \"vol_plus\": " + fmt(r.vol_plus);
  s += ", \"vol_minus\": " + fmt(r.vol_minus);
  s += ", \"ncut\": " + fmt(r.ncut);
  s += ", \"cheeger\": " + fmt(r.cheeger);
  s += ", \"scaled_ncut\": " + fmt(r.scaled_ncut);
  s += ", \"scaled_cheeger\": " + fmt(r.scaled_cheeger);
  s += ", \"s_cut\": " + fmt(r.s_cut);
  s += ", \"s_vol\": " + fmt(r.s_vol);
  s += "}";
  return s;
}

std::string quality_csv_header() {
  return "cut,vol_plus,vol_minus,ncut,cheeger,scaled_ncut,scaled_cheeger,"
         "s_cut,s_vol";
}

std::string quality_csv_line(const QualityReport& r) {
  return fmt(r.cut) + "," + fmt(r.vol_plus) + "," + fmt(r.vol_minus) + "," +
         fmt(r.ncut) + "," + fmt(r.cheeger) + "," + fmt(r.scaled_ncut) + "," +
         fmt(r.scaled_cheeger) + "," + fmt(r.s_cut) + "," + fmt(r.s_vol);
}

}  // namespace geocut
