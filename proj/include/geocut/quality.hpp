#ifndef GEOCUT_QUALITY_HPP_
#define GEOCUT_QUALITY_HPP_

#include <string>

#include "geocut/graph.hpp"
#include "geocut/types.hpp"

namespace geocut {

// {x : <normal, x> = offset}; the plus halfspace is <normal, x> >= offset,
// so points exactly on the plane are assigned to H+.
struct Hyperplane {
  Vector normal;
  double offset = 0.0;

  static Hyperplane axis(int axis, double offset, int dim);
  static Hyperplane general(Vector normal, double offset);

  // index of the coordinate axis if the normal is +-e_axis, else -1
  int axis_index() const;
  bool oriented_negative() const;  // true if normal is -e_axis
};

struct Partition {
  Labels labels;  // true = plus side
};

Partition induce_partition(const Matrix& points, const Hyperplane& plane);

// cut(U, V\U): ordered-pair sum w(u,v) + w(v,u) on directed graphs; each
// stored crossing edge counts twice on undirected graphs.
double cut_value(const NeighborhoodGraph& graph, const Partition& partition);

// vol(U) = sum of w over edges originating in U (undirected: once per
// endpoint in U)
double volume_value(const NeighborhoodGraph& graph, const Partition& partition,
                    bool plus_side);

struct ScalingFactors {
  double s_cut = 1.0;
  double s_vol = 1.0;
};

// Deterministic normalizers per graph family; kNN kinds use the rate radius
// r_n = (k/n)^(1/d). Gaussian weights on kNN/r graphs need a declared regime.
ScalingFactors scaling_factors(const GraphSpec& spec, int n, int dim);

struct QualityReport {
  double cut = 0.0;
  double vol_plus = 0.0;
  double vol_minus = 0.0;
  double ncut = 0.0;
  double cheeger = 0.0;
  double scaled_ncut = 0.0;
  double scaled_cheeger = 0.0;
  double s_cut = 1.0;
  double s_vol = 1.0;
};

// Full report; throws ZeroVolume if a side has no outgoing weight.
QualityReport ncut(const NeighborhoodGraph& graph, const Partition& partition);

std::string quality_json(const QualityReport& report);
std::string quality_csv_header();
std::string quality_csv_line(const QualityReport& report);

}  // namespace geocut

#endif  // GEOCUT_QUALITY_HPP_
