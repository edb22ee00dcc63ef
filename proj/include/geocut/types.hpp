#ifndef GEOCUT_TYPES_HPP_
#define GEOCUT_TYPES_HPP_

#include <Eigen/Dense>

namespace geocut {

using Matrix = Eigen::MatrixXd;   // sample sets are n x d, one point per row
using Vector = Eigen::VectorXd;
using Labels = Eigen::Array<bool, Eigen::Dynamic, 1>;

// Axis-aligned box, used for density supports and integration domains.
struct Box {
  Vector lo;
  Vector hi;

  int dim() const { return static_cast<int>(lo.size()); }

  double volume() const {
    double v = 1.0;
    for (int c = 0; c < dim(); ++c) v *= hi[c] - lo[c];
    return v;
  }

  bool contains(const Vector& x) const {
    for (int c = 0; c < dim(); ++c)
      if (x[c] < lo[c] || x[c] > hi[c]) return false;
    return true;
  }
};

// Single canonical distance routine. The kd-tree, the brute-force oracles and
// the edge-weight evaluation all go through here so that recomputed distances
// are bit-identical to stored ones.
inline double squared_distance(const double* a, const double* b, int d) {
  double s = 0.0;
  for (int c = 0; c < d; ++c) {
    const double t = a[c] - b[c];
    s += t * t;
  }
  return s;
}

inline double squared_distance(const Matrix& pts, Eigen::Index i, Eigen::Index j) {
  double s = 0.0;
  for (Eigen::Index c = 0; c < pts.cols(); ++c) {
    const double t = pts(i, c) - pts(j, c);
    s += t * t;
  }
  return s;
}

inline double point_distance(const Matrix& pts, Eigen::Index i, Eigen::Index j) {
  return std::sqrt(squared_distance(pts, i, j));
}

}  // namespace geocut

#endif  // GEOCUT_TYPES_HPP_
