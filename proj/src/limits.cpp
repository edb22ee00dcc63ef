#include "geocut/limits.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "geocut/errors.hpp"
#include "geocut/quadrature.hpp"
#include "geocut/rng.hpp"

namespace geocut {

namespace {

constexpr double kPi = 3.1415926535897932384626433832795;
constexpr double kTwoPi = 2.0 * kPi;
constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

double unit_ball_volume(int d) {
  switch (d) {
    case 0: return 1.0;
    case 1: return 2.0;
    case 2: return kPi;
    case 3: return 4.0 * kPi / 3.0;
    default:
      if (d < 0) throw PreconditionError("ball dimension must be >= 0");
      return std::pow(kPi, 0.5 * d) / std::tgamma(0.5 * d + 1.0);
  }
}

std::vector<double> unit_ball_volumes(int d_max) {
  std::vector<double> eta(d_max + 1);
  for (int d = 0; d <= d_max; ++d) eta[d] = unit_ball_volume(d);
  return eta;
}

namespace {

// int_0^a t^pow exp(-q t^2 / 2) dt, dimensionless; a may be infinite.
// Beyond t = 12/sqrt(q) the integrand is below 1e-31, so the tail is cut.
double gaussian_power_integral(double a, int pow, int q) {
  const double tail = 12.0 / std::sqrt(static_cast<double>(q));
  const double hi = std::min(a, tail);
  const QuadratureResult r = adaptive_simpson(
      [pow, q](double t) {
        return std::pow(t, pow) * std::exp(-0.5 * q * t * t);
      },
      0.0, hi, 1e-14);
  return r.value;
}

void check_q(int q) {
  if (q != 1 && q != 2) throw PreconditionError("q must be 1 or 2");
}

}  // namespace

double cap_integral(const WeightFunction& weight, double r, int d, int q) {
  check_q(q);
  if (d < 1) throw PreconditionError("dimension must be >= 1");
  if (!(r > 0.0)) throw PreconditionError("radius must be > 0");
  const double eta_dm1 = unit_ball_volume(d - 1);
  if (!weight.is_gaussian()) {
    if (std::isinf(r))
      throw InfiniteRadiusUnitWeightError(
          "cap integral diverges for unit weights at infinite radius");
    return eta_dm1 * std::pow(r, d + 1) / (d + 1);
  }
  const double sigma = weight.sigma;
  const double scale =
      std::pow(kTwoPi * sigma * sigma, -0.5 * q * d) * std::pow(sigma, d + 1);
  return eta_dm1 * scale * gaussian_power_integral(r / sigma, d, q);
}

double ball_integral(const WeightFunction& weight, double r, int d, int q) {
  check_q(q);
  if (d < 1) throw PreconditionError("dimension must be >= 1");
  if (!(r > 0.0)) throw PreconditionError("radius must be > 0");
  const double eta_d = unit_ball_volume(d);
  if (!weight.is_gaussian()) {
    if (std::isinf(r))
      throw InfiniteRadiusUnitWeightError(
          "ball integral diverges for unit weights at infinite radius");
    return eta_d * std::pow(r, d);
  }
  const double sigma = weight.sigma;
  const double scale =
      std::pow(kTwoPi * sigma * sigma, -0.5 * q * d) * std::pow(sigma, d);
  return d * eta_d * scale * gaussian_power_integral(r / sigma, d - 1, q);
}

CapBallIntegrals cap_ball_integrals(const WeightFunction& weight, double r,
                                    int d) {
  CapBallIntegrals out;
  out.f_c1 = cap_integral(weight, r, d, 1);
  out.f_c2 = cap_integral(weight, r, d, 2);
  out.f_b1 = ball_integral(weight, r, d, 1);
  out.f_b2 = ball_integral(weight, r, d, 2);
  out.eta = unit_ball_volumes(d);
  return out;
}

std::string family_name(GraphFamily family) {
  switch (family) {
    case GraphFamily::knn_unweighted: return "knn_unweighted";
    case GraphFamily::knn_gauss_r_dom: return "knn_gauss_r_dom";
    case GraphFamily::knn_gauss_sigma_dom: return "knn_gauss_sigma_dom";
    case GraphFamily::r_unweighted: return "r_unweighted";
    case GraphFamily::r_gauss_r_dom: return "r_gauss_r_dom";
    case GraphFamily::r_gauss_sigma_dom: return "r_gauss_sigma_dom";
    case GraphFamily::complete_gauss: return "complete_gauss";
  }
  return "unknown";
}

GraphFamily family_from_name(const std::string& name) {
  for (GraphFamily f : all_families())
    if (family_name(f) == name) return f;
  throw ConfigError("unknown graph family '" + name + "'");
}

std::vector<GraphFamily> all_families() {
  return {GraphFamily::knn_unweighted,      GraphFamily::knn_gauss_r_dom,
          GraphFamily::knn_gauss_sigma_dom, GraphFamily::r_unweighted,
          GraphFamily::r_gauss_r_dom,       GraphFamily::r_gauss_sigma_dom,
          GraphFamily::complete_gauss};
}

FamilyLaw family_law(GraphFamily family, int d) {
  if (d < 1) throw PreconditionError("dimension must be >= 1");
  const double dd = static_cast<double>(d);
  const double eta_d = unit_ball_volume(d);
  const double eta_dm1 = unit_ball_volume(d - 1);
  const double gauss_norm = std::pow(kTwoPi, 0.5 * dd);  // (2 pi)^(d/2)
  const double knn_exp = 1.0 - 1.0 / dd;
  const double c_gauss = 2.0 / std::sqrt(kTwoPi);

  switch (family) {
    case GraphFamily::knn_unweighted:
      return {2.0 * eta_dm1 / ((dd + 1.0) * std::pow(eta_d, 1.0 + 1.0 / dd)),
              knn_exp, 1.0, 1.0};
    case GraphFamily::knn_gauss_r_dom:
      return {c_gauss, 2.0, 1.0, 2.0};
    case GraphFamily::knn_gauss_sigma_dom:
      return {2.0 * eta_dm1 * std::pow(eta_d, -1.0 - 1.0 / dd) /
                  ((dd + 1.0) * gauss_norm),
              knn_exp, 1.0 / gauss_norm, 1.0};
    case GraphFamily::r_unweighted:
      return {2.0 * eta_dm1 / (dd + 1.0), 2.0, eta_d, 2.0};
    case GraphFamily::r_gauss_r_dom:
      return {c_gauss, 2.0, 1.0, 2.0};
    case GraphFamily::r_gauss_sigma_dom:
      return {2.0 * eta_dm1 / ((dd + 1.0) * gauss_norm), 2.0,
              eta_d / gauss_norm, 2.0};
    case GraphFamily::complete_gauss:
      return {c_gauss, 2.0, 1.0, 2.0};
  }
  throw PreconditionError("unknown family");
}

namespace {

// p^e with the convention 0^0 = 0: the limit integrands live on the support
double density_power(double p, double e) {
  if (!(p > 0.0)) return 0.0;
  return e == 0.0 ? 1.0 : std::pow(p, e);
}

struct PlanePosition {
  int axis = 0;
  double position = 0.0;       // coordinate of the plane on `axis`
  bool plus_is_above = true;   // H+ = {x_axis >= position}?
};

PlanePosition resolve_plane(const Density& density, const Hyperplane& plane) {
  if (plane.normal.size() != density.dim())
    throw PreconditionError("hyperplane dimension mismatch");
  const int axis = plane.axis_index();
  if (axis < 0)
    throw AxisAlignedNormalRequiredError(
        "limit functionals support axis-aligned hyperplanes only");
  PlanePosition pp;
  pp.axis = axis;
  pp.position = plane.offset * plane.normal[axis];
  pp.plus_is_above = plane.normal[axis] > 0.0;
  return pp;
}

Fn1 mixture_raw_on_line(const TruncatedMixture& mix, const Vector& base,
                        int axis) {
  return [&mix, base, axis](double t) mutable {
    Vector x = base;
    x[axis] = t;
    return mix.raw(x);
  };
}

// integral of coeff * p^e over the band {a <= x_axis <= b} (Lebesgue)
QuadratureResult band_power_integral(const Density& density, int axis, double a,
                                     double b, double coeff, double e) {
  const Box& box = density.bounding_box();
  const int d = density.dim();
  a = std::max(a, box.lo[axis]);
  b = std::min(b, box.hi[axis]);
  if (!(b > a)) return {0.0, 0.0};

  if (!density.is_mixture()) {
    const double p = density.uniform().value();
    double vol = b - a;
    for (int c = 0; c < d; ++c)
      if (c != axis) vol *= box.hi[c] - box.lo[c];
    return {coeff * density_power(p, e) * vol, 0.0};
  }

  const TruncatedMixture& mix = density.mixture();
  const double z = mix.normalizer();
  const double theta = mix.theta();

  if (d == 1) {
    Vector base(1);
    base[0] = 0.0;
    Fn1 raw = mixture_raw_on_line(mix, base, 0);
    Fn1 f = [&](double t) { return coeff * density_power(raw(t) / z, e); };
    // scan resolution proportional to the band width (sweeps integrate many
    // narrow strips)
    const double frac = (b - a) / (box.hi[axis] - box.lo[axis]);
    const int scan = std::clamp(static_cast<int>(4096.0 * frac), 32, 4096);
    return integrate_where_above(raw, f, a, b, theta, 1e-10, scan);
  }
  if (d == 2) {
    const int other = 1 - axis;
    double max_inner_err = 0.0;
    Fn1 outer = [&](double t) {
      Vector base(2);
      base[axis] = t;
      base[other] = 0.0;
      Fn1 raw = mixture_raw_on_line(mix, base, other);
      Fn1 f = [&](double u) { return coeff * density_power(raw(u) / z, e); };
      const QuadratureResult r = integrate_where_above(
          raw, f, box.lo[other], box.hi[other], theta, 1e-10, 1024);
      max_inner_err = std::max(max_inner_err, r.error);
      return r.value;
    };
    QuadratureResult r = adaptive_simpson(outer, a, b, 1e-8);
    r.error += max_inner_err * (b - a);
    return r;
  }

  // d >= 3: stratified Monte Carlo over the band
  Box band = box;
  band.lo[axis] = a;
  band.hi[axis] = b;
  Rng rng(97531);
  FnD f = [&](const Vector& x) {
    return coeff * density_power(density.evaluate(x), e);
  };
  const McResult r = stratified_mc(f, band, 10, 64, rng);
  return {r.value, r.std_error};
}

// integral of coeff * p^e over the slice {x_axis = position} (surface)
QuadratureResult slice_power_integral(const Density& density, int axis,
                                      double position, double coeff, double e) {
  const Box& box = density.bounding_box();
  const int d = density.dim();
  if (d > 3)
    throw UnsupportedDimensionError(
        "surface integrals support slice dimension <= 2");
  if (position < box.lo[axis] || position > box.hi[axis]) return {0.0, 0.0};

  if (!density.is_mixture()) {
    const double p = density.uniform().value();
    double area = 1.0;
    for (int c = 0; c < d; ++c)
      if (c != axis) area *= box.hi[c] - box.lo[c];
    return {coeff * density_power(p, e) * area, 0.0};
  }

  const TruncatedMixture& mix = density.mixture();
  const double z = mix.normalizer();
  const double theta = mix.theta();

  if (d == 1) {
    Vector x(1);
    x[0] = position;
    const double raw = mix.raw(x);
    return {raw >= theta ? coeff * density_power(raw / z, e) : 0.0, 0.0};
  }
  if (d == 2) {
    const int other = 1 - axis;
    Vector base(2);
    base[axis] = position;
    base[other] = 0.0;
    Fn1 raw = mixture_raw_on_line(mix, base, other);
    Fn1 f = [&](double u) { return coeff * density_power(raw(u) / z, e); };
    return integrate_where_above(raw, f, box.lo[other], box.hi[other], theta,
                                 1e-10, 2048);
  }

  // d == 3: slice is 2D; outer adaptive over one axis, crossing-split inner
  int u_axis = -1, v_axis = -1;
  for (int c = 0; c < 3; ++c) {
    if (c == axis) continue;
    if (u_axis < 0) u_axis = c;
    else v_axis = c;
  }
  double max_inner_err = 0.0;
  Fn1 outer = [&](double u) {
    Vector base(3);
    base[axis] = position;
    base[u_axis] = u;
    base[v_axis] = 0.0;
    Fn1 raw = mixture_raw_on_line(mix, base, v_axis);
    Fn1 f = [&](double v) { return coeff * density_power(raw(v) / z, e); };
    const QuadratureResult r = integrate_where_above(
        raw, f, box.lo[v_axis], box.hi[v_axis], theta, 1e-10, 512);
    max_inner_err = std::max(max_inner_err, r.error);
    return r.value;
  };
  QuadratureResult r =
      adaptive_simpson(outer, box.lo[u_axis], box.hi[u_axis], 1e-7);
  r.error += max_inner_err * (box.hi[u_axis] - box.lo[u_axis]);
  return r;
}

QuadratureResult cut_limit_impl(const Density& density, const Hyperplane& plane,
                                GraphFamily family) {
  const PlanePosition pp = resolve_plane(density, plane);
  const FamilyLaw law = family_law(family, density.dim());
  return slice_power_integral(density, pp.axis, pp.position, law.cut_coeff,
                              law.cut_exp);
}

QuadratureResult vol_limit_impl(const Density& density, const Hyperplane& plane,
                                bool plus_side, GraphFamily family) {
  const PlanePosition pp = resolve_plane(density, plane);
  const FamilyLaw law = family_law(family, density.dim());
  const Box& box = density.bounding_box();
  const bool above = (plus_side == pp.plus_is_above);
  const double a = above ? pp.position : box.lo[pp.axis];
  const double b = above ? box.hi[pp.axis] : pp.position;
  return band_power_integral(density, pp.axis, a, b, law.vol_coeff,
                             law.vol_exp);
}

}  // namespace

double cut_limit(const Density& density, const Hyperplane& plane,
                 GraphFamily family) {
  return cut_limit_impl(density, plane, family).value;
}

double vol_limit(const Density& density, const Hyperplane& plane,
                 bool plus_side, GraphFamily family) {
  return vol_limit_impl(density, plane, plus_side, family).value;
}

LimitReport ncut_limit(const Density& density, const Hyperplane& plane,
                       GraphFamily family) {
  LimitReport rep;
  rep.family = family;
  const QuadratureResult c = cut_limit_impl(density, plane, family);
  const QuadratureResult vp = vol_limit_impl(density, plane, true, family);
  const QuadratureResult vm = vol_limit_impl(density, plane, false, family);
  rep.cut_lim = c.value;
  rep.vol_lim_plus = vp.value;
  rep.vol_lim_minus = vm.value;
  rep.quadrature_error = c.error + vp.error + vm.error;
  if (!(rep.vol_lim_plus > 0.0) || !(rep.vol_lim_minus > 0.0))
    throw ZeroVolumeError("a halfspace carries no volume limit");
  rep.ncut_lim =
      rep.cut_lim * (1.0 / rep.vol_lim_plus + 1.0 / rep.vol_lim_minus);
  rep.cheeger_lim = rep.cut_lim / std::min(rep.vol_lim_plus, rep.vol_lim_minus);
  return rep;
}

std::string limit_report_json(const LimitReport& r) {
  char buf[512];
  std::snprintf(buf, sizeof(buf),
                "{\"family\": \"%s\", \"cut_lim\": %.17g, "
                "\"vol_lim_plus\": %.17g, \"vol_lim_minus\": %.17g, "
                "\"ncut_lim\": %.17g, \"cheeger_lim\": %.17g, "
                "\"quadrature_error\": %.17g}",
                family_name(r.family).c_str(), r.cut_lim, r.vol_lim_plus,
                r.vol_lim_minus, r.ncut_lim, r.cheeger_lim, r.quadrature_error);
  return buf;
}

SweepResult optimal_cut_sweep(const Density& density, GraphFamily family,
                              int axis, const std::vector<double>& offsets) {
  if (offsets.empty()) throw PreconditionError("offset grid is empty");
  for (size_t i = 1; i < offsets.size(); ++i)
    if (!(offsets[i] > offsets[i - 1]))
      throw PreconditionError("offsets must be strictly increasing");
  const int d = density.dim();
  if (axis < 0 || axis >= d) throw PreconditionError("axis out of range");

  const FamilyLaw law = family_law(family, d);
  const Box& box = density.bounding_box();

  // cumulative halfspace volumes: one band integral per consecutive pair
  const size_t m = offsets.size();
  std::vector<double> vol_below(m);
  double acc = band_power_integral(density, axis, box.lo[axis] - 1.0,
                                   offsets[0], law.vol_coeff, law.vol_exp)
                   .value;
  vol_below[0] = acc;
  for (size_t i = 1; i < m; ++i) {
    acc += band_power_integral(density, axis, offsets[i - 1], offsets[i],
                               law.vol_coeff, law.vol_exp)
               .value;
    vol_below[i] = acc;
  }
  const double total =
      acc + band_power_integral(density, axis, offsets[m - 1],
                                box.hi[axis] + 1.0, law.vol_coeff, law.vol_exp)
                .value;

  SweepResult result;
  result.family = family;
  result.best_ncut = kInf;
  result.curve.resize(m);
  const double degenerate_floor = 1e-12 * total;
  for (size_t i = 0; i < m; ++i) {
    const double vol_minus = vol_below[i];
    const double vol_plus = total - vol_below[i];
    SweepPoint& pt = result.curve[i];
    pt.offset = offsets[i];
    if (vol_minus <= degenerate_floor || vol_plus <= degenerate_floor) {
      pt.ncut_lim = kInf;
      pt.cheeger_lim = kInf;
      continue;
    }
    const double cut =
        slice_power_integral(density, axis, offsets[i], law.cut_coeff,
                             law.cut_exp)
            .value;
    pt.ncut_lim = cut * (1.0 / vol_plus + 1.0 / vol_minus);
    pt.cheeger_lim = cut / std::min(vol_plus, vol_minus);
    if (pt.ncut_lim < result.best_ncut) {
      result.best_ncut = pt.ncut_lim;
      result.best_offset = pt.offset;
    }
  }
  if (!std::isfinite(result.best_ncut))
    throw AllDegenerateError("every offset leaves a side with zero volume");
  return result;
}

McEstimate mc_cap_oracle(const WeightFunction& weight, double R, int d,
                         long long trials, uint64_t seed) {
  if (!(R > 0.0)) throw PreconditionError("R must be > 0");
  if (trials < 2) throw PreconditionError("trials must be >= 2");
  Rng rng(seed);
  const double volume_factor = R * unit_ball_volume(d) * std::pow(R, d);
  double mean = 0.0, m2 = 0.0;
  for (long long i = 0; i < trials; ++i) {
    const double t = rng.uniform() * R;          // position along the normal
    const Vector u = rng.uniform_in_ball(d);     // offset within B(center, R)
    const double y0 = t + R * u[0];              // first axis coordinate
    double val = 0.0;
    if (y0 < 0.0) val = weight(R * u.norm()) * volume_factor;
    const double delta = val - mean;
    mean += delta / static_cast<double>(i + 1);
    m2 += delta * (val - mean);
  }
  const double var = m2 / static_cast<double>(trials - 1);
  return {mean, std::sqrt(var / static_cast<double>(trials)), trials};
}

McEstimate mc_ball_oracle(const WeightFunction& weight, double R, int d,
                          long long trials, uint64_t seed) {
  if (!(R > 0.0)) throw PreconditionError("R must be > 0");
  if (trials < 2) throw PreconditionError("trials must be >= 2");
  Rng rng(seed);
  const double volume_factor = unit_ball_volume(d) * std::pow(R, d);
  double mean = 0.0, m2 = 0.0;
  for (long long i = 0; i < trials; ++i) {
    const Vector u = rng.uniform_in_ball(d);
    const double val = weight(R * u.norm()) * volume_factor;
    const double delta = val - mean;
    mean += delta / static_cast<double>(i + 1);
    m2 += delta * (val - mean);
  }
  const double var = m2 / static_cast<double>(trials - 1);
  return {mean, std::sqrt(var / static_cast<double>(trials)), trials};
}

}  // namespace geocut
