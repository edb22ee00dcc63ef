#ifndef GEOCUT_LIMITS_HPP_
#define GEOCUT_LIMITS_HPP_

#include <string>
#include <vector>

#include "geocut/density.hpp"
#include "geocut/graph.hpp"
#include "geocut/quality.hpp"
#include "geocut/types.hpp"

namespace geocut {

// volume of the d-dimensional unit ball (eta_0 = 1, eta_1 = 2, eta_2 = pi, ...)
double unit_ball_volume(int d);
std::vector<double> unit_ball_volumes(int d_max);

// cap integral F_C^(q)(r) = eta_{d-1} * int_0^r u^d f^q(u) du and
// ball integral F_B^(q)(r) = d eta_d * int_0^r u^{d-1} f^q(u) du.
// Unit weights have closed forms; Gaussian weights are integrated by adaptive
// quadrature in the rescaled variable u/sigma. r may be infinite for Gaussian
// weights only.
double cap_integral(const WeightFunction& weight, double r, int d, int q);
double ball_integral(const WeightFunction& weight, double r, int d, int q);

struct CapBallIntegrals {
  double f_c1 = 0.0;
  double f_c2 = 0.0;
  double f_b1 = 0.0;
  double f_b2 = 0.0;
  std::vector<double> eta;  // eta_0 .. eta_d
};

CapBallIntegrals cap_ball_integrals(const WeightFunction& weight, double r, int d);

// The seven graph families with distinct rows in the limit table.
enum class GraphFamily {
  knn_unweighted,
  knn_gauss_r_dom,      // Gaussian weights, r_n / sigma_n -> infinity
  knn_gauss_sigma_dom,  // Gaussian weights, r_n / sigma_n -> 0
  r_unweighted,
  r_gauss_r_dom,
  r_gauss_sigma_dom,
  complete_gauss
};

std::string family_name(GraphFamily family);
GraphFamily family_from_name(const std::string& name);
std::vector<GraphFamily> all_families();

// One row of the limit table: the cut limit integrates
// cut_coeff * p^cut_exp over the hyperplane, the volume limit integrates
// vol_coeff * p^vol_exp over a halfspace.
struct FamilyLaw {
  double cut_coeff = 0.0;
  double cut_exp = 0.0;
  double vol_coeff = 0.0;
  double vol_exp = 0.0;
};

FamilyLaw family_law(GraphFamily family, int d);

// Limit functionals by quadrature. Hyperplanes must be axis-aligned here;
// supported dimensions are d <= 3 (surface slices up to 2D).
double cut_limit(const Density& density, const Hyperplane& plane,
                 GraphFamily family);
double vol_limit(const Density& density, const Hyperplane& plane,
                 bool plus_side, GraphFamily family);

struct LimitReport {
  double cut_lim = 0.0;
  double vol_lim_plus = 0.0;
  double vol_lim_minus = 0.0;
  double ncut_lim = 0.0;
  double cheeger_lim = 0.0;
  GraphFamily family = GraphFamily::knn_unweighted;
  double quadrature_error = 0.0;
};

LimitReport ncut_limit(const Density& density, const Hyperplane& plane,
                       GraphFamily family);

std::string limit_report_json(const LimitReport& report);

struct SweepPoint {
  double offset = 0.0;
  double ncut_lim = 0.0;
  double cheeger_lim = 0.0;
};

struct SweepResult {
  GraphFamily family = GraphFamily::knn_unweighted;
  double best_offset = 0.0;
  double best_ncut = 0.0;
  std::vector<SweepPoint> curve;
};

// Evaluates ncut_limit over a grid of axis-aligned offsets; degenerate
// offsets (zero volume on a side) enter the curve as +inf and never win.
// Ties in the minimum resolve toward the smaller offset.
SweepResult optimal_cut_sweep(const Density& density, GraphFamily family,
                              int axis, const std::vector<double>& offsets);

struct McEstimate {
  double value = 0.0;
  double std_error = 0.0;
  long long trials = 0;
};

// Monte-Carlo oracles for the cap and ball integrals: the cap oracle samples
// int_0^R int_{B(s + t n_S, R) cap H^-} f(dist) dy dt with s at the origin
// and n_S the first axis; the ball oracle samples int_{B(x,R)} f(dist) dy.
McEstimate mc_cap_oracle(const WeightFunction& weight, double R, int d,
                         long long trials, uint64_t seed);
McEstimate mc_ball_oracle(const WeightFunction& weight, double R, int d,
                          long long trials, uint64_t seed);

}  // namespace geocut

#endif  // GEOCUT_LIMITS_HPP_
