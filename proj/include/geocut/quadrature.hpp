#ifndef GEOCUT_QUADRATURE_HPP_
#define GEOCUT_QUADRATURE_HPP_

#include <functional>
#include <utility>
#include <vector>

#include "geocut/rng.hpp"
#include "geocut/types.hpp"

namespace geocut {

using Fn1 = std::function<double(double)>;
using Fn2 = std::function<double(double, double)>;
using FnD = std::function<double(const Vector&)>;

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;  // accumulated error estimate
};

// Adaptive Simpson with Richardson extrapolation and absolute tolerance.
QuadratureResult adaptive_simpson(const Fn1& f, double a, double b,
                                  double abs_tol, int max_depth = 52);

// Subintervals of [lo, hi] on which g >= level. Crossings are located by a
// uniform scan followed by bisection, so g must not oscillate around the
// level faster than the scan resolution.
std::vector<std::pair<double, double>> intervals_above(const Fn1& g, double lo,
                                                       double hi, double level,
                                                       int scan_points = 1024);

// Integral of f over {x in [lo, hi] : g(x) >= level}. Splitting at the
// crossings keeps the integrand smooth on every piece.
QuadratureResult integrate_where_above(const Fn1& g, const Fn1& f, double lo,
                                       double hi, double level, double abs_tol,
                                       int scan_points = 1024);

// Tensor-product adaptive rule for smooth-ish 2D integrands over a rectangle.
QuadratureResult adaptive_tensor_2d(const Fn2& f, double x_lo, double x_hi,
                                    double y_lo, double y_hi, double abs_tol);

struct McResult {
  double value = 0.0;
  double std_error = 0.0;
  long long samples = 0;
};

// Stratified Monte Carlo over a box; the standard error combines the
// within-stratum variances.
McResult stratified_mc(const FnD& f, const Box& box, int strata_per_dim,
                       long long samples_per_stratum, Rng& rng);

}  // namespace geocut

#endif  // GEOCUT_QUADRATURE_HPP_
