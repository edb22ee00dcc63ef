#include "geocut/density.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "geocut/errors.hpp"
#include "geocut/rng.hpp"

namespace geocut {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

double mixture_raw(const std::vector<GaussianComponent>& comps, int d,
                   const Vector& x) {
  double p = 0.0;
  for (const auto& c : comps) {
    const double s2 = c.std * c.std;
    const double norm = std::pow(kTwoPi * s2, -0.5 * d);
    const double q = (x - c.mean).squaredNorm();
    p += c.weight * norm * std::exp(-0.5 * q / s2);
  }
  return p;
}

void validate_components(const std::vector<GaussianComponent>& comps, int dim) {
  if (comps.empty()) throw PreconditionError("mixture needs components");
  double wsum = 0.0;
  for (const auto& c : comps) {
    if (!(c.weight > 0.0)) throw PreconditionError("component weight must be > 0");
    if (!(c.std > 0.0)) throw PreconditionError("component std must be > 0");
    if (c.mean.size() != dim)
      throw PreconditionError("component mean dimension mismatch");
    wsum += c.weight;
  }
  if (std::abs(wsum - 1.0) > 1e-12)
    throw PreconditionError("component weights must sum to 1");
}

}  // namespace

TruncatedMixture TruncatedMixture::normalize(
    std::vector<GaussianComponent> components, double theta, int dim,
    const QuadratureSpec& quad) {
  if (dim < 1) throw PreconditionError("dimension must be >= 1");
  if (theta < 0.0) throw PreconditionError("theta must be >= 0");
  validate_components(components, dim);

  TruncatedMixture m;
  m.dim_ = dim;
  m.components_ = std::move(components);
  m.theta_ = theta;

  // box from means +- 8 std; raw mass outside is below quadrature tolerance
  Box box;
  box.lo = Vector::Constant(dim, std::numeric_limits<double>::infinity());
  box.hi = Vector::Constant(dim, -std::numeric_limits<double>::infinity());
  for (const auto& c : m.components_) {
    for (int i = 0; i < dim; ++i) {
      box.lo[i] = std::min(box.lo[i], c.mean[i] - 8.0 * c.std);
      box.hi[i] = std::max(box.hi[i], c.mean[i] + 8.0 * c.std);
    }
  }

  auto raw_at = [&m](const Vector& x) { return m.raw(x); };

  if (theta > 0.0) {
    // tighten the box to {raw >= theta} on a scan grid, one cell of margin
    const int g = (dim == 1) ? 4096 : (dim == 2 ? 512 : 48);
    Vector step = (box.hi - box.lo) / static_cast<double>(g - 1);
    Vector tight_lo = box.hi, tight_hi = box.lo;
    bool any = false;
    std::vector<int> idx(dim, 0);
    Vector x(dim);
    const long long cells = static_cast<long long>(std::pow(g, dim));
    for (long long cell = 0; cell < cells; ++cell) {
      long long rest = cell;
      for (int c = 0; c < dim; ++c) {
        idx[c] = static_cast<int>(rest % g);
        rest /= g;
        x[c] = box.lo[c] + idx[c] * step[c];
      }
      if (raw_at(x) >= theta) {
        any = true;
        for (int c = 0; c < dim; ++c) {
          tight_lo[c] = std::min(tight_lo[c], x[c] - step[c]);
          tight_hi[c] = std::max(tight_hi[c], x[c] + step[c]);
        }
      }
    }
    if (!any)
      throw EmptySupportError("no grid point satisfies raw >= theta");
    for (int c = 0; c < dim; ++c) {
      box.lo[c] = std::max(box.lo[c], tight_lo[c]);
      box.hi[c] = std::min(box.hi[c], tight_hi[c]);
    }
  }
  m.box_ = box;

  if (dim == 1) {
    Fn1 raw1 = [&](double t) {
      Vector x(1);
      x[0] = t;
      return raw_at(x);
    };
    const QuadratureResult r =
        integrate_where_above(raw1, raw1, box.lo[0], box.hi[0], theta,
                              quad.abs_tol_1d, quad.scan_points);
    m.z_ = r.value;
    m.z_error_ = r.error;
  } else if (dim == 2) {
    Fn1 outer = [&](double x0) {
      Fn1 raw_slice = [&](double x1) {
        Vector x(2);
        x[0] = x0;
        x[1] = x1;
        return raw_at(x);
      };
      return integrate_where_above(raw_slice, raw_slice, box.lo[1], box.hi[1],
                                   theta, quad.abs_tol_2d * 1e-2,
                                   quad.scan_points / 2)
          .value;
    };
    const QuadratureResult r =
        adaptive_simpson(outer, box.lo[0], box.hi[0], quad.abs_tol_2d);
    m.z_ = r.value;
    m.z_error_ = r.error;
  } else {
    Rng rng(quad.mc_seed);
    FnD f = [&](const Vector& x) {
      const double p = raw_at(x);
      return p >= theta ? p : 0.0;
    };
    const McResult r = stratified_mc(f, box, quad.mc_strata_per_dim,
                                     quad.mc_samples_per_stratum, rng);
    m.z_ = r.value;
    m.z_error_ = r.std_error;
  }

  if (!(m.z_ > 0.0))
    throw EmptySupportError("normalizer is not positive");

  m.cumulative_weights_.resize(m.components_.size());
  double acc = 0.0;
  for (size_t i = 0; i < m.components_.size(); ++i) {
    acc += m.components_[i].weight;
    m.cumulative_weights_[i] = acc;
  }
  m.cumulative_weights_.back() = 1.0;
  return m;
}

double TruncatedMixture::raw(const Vector& x) const {
  return mixture_raw(components_, dim_, x);
}

double TruncatedMixture::evaluate(const Vector& x) const {
  if (!box_.contains(x)) return 0.0;
  const double p = raw(x);
  return p >= theta_ ? p / z_ : 0.0;
}

Matrix TruncatedMixture::sample(int n, uint64_t seed) const {
  if (n < 1) throw PreconditionError("sample size must be >= 1");
  Rng rng(seed);
  Matrix pts(n, dim_);
  long long proposals = 0;
  int accepted = 0;
  Vector x(dim_);
  while (accepted < n) {
    ++proposals;
    if (proposals >= 1000000 &&
        static_cast<double>(accepted) < 1e-4 * static_cast<double>(proposals))
      throw RejectionStallError("acceptance rate below 1e-4 over 1e6 proposals");
    const double u = rng.uniform();
    size_t ci = std::lower_bound(cumulative_weights_.begin(),
                                 cumulative_weights_.end(), u) -
                cumulative_weights_.begin();
    if (ci >= components_.size()) ci = components_.size() - 1;
    const auto& comp = components_[ci];
    for (int c = 0; c < dim_; ++c) x[c] = comp.mean[c] + comp.std * rng.normal();
    if (raw(x) >= theta_ && box_.contains(x)) {
      pts.row(accepted) = x.transpose();
      ++accepted;
    }
  }
  return pts;
}

UniformBox::UniformBox(Box box) : box_(std::move(box)) {
  for (int c = 0; c < box_.dim(); ++c)
    if (!(box_.hi[c] > box_.lo[c]))
      throw PreconditionError("uniform box must have positive extent");
  value_ = 1.0 / box_.volume();
}

Matrix UniformBox::sample(int n, uint64_t seed) const {
  if (n < 1) throw PreconditionError("sample size must be >= 1");
  Rng rng(seed);
  Matrix pts(n, dim());
  for (int i = 0; i < n; ++i)
    for (int c = 0; c < dim(); ++c)
      pts(i, c) = rng.uniform(box_.lo[c], box_.hi[c]);
  return pts;
}

Density::Density(TruncatedMixture m, std::string id)
    : impl_(std::move(m)), id_(std::move(id)) {}
Density::Density(UniformBox u, std::string id)
    : impl_(std::move(u)), id_(std::move(id)) {}

int Density::dim() const {
  return std::visit([](const auto& d) { return d.dim(); }, impl_);
}

double Density::evaluate(const Vector& x) const {
  return std::visit([&](const auto& d) { return d.evaluate(x); }, impl_);
}

const Box& Density::bounding_box() const {
  return std::visit([](const auto& d) -> const Box& { return d.bounding_box(); },
                    impl_);
}

SampleSet Density::sample(int n, uint64_t seed) const {
  SampleSet s;
  s.points = std::visit([&](const auto& d) { return d.sample(n, seed); }, impl_);
  s.seed = seed;
  s.density_id = id_;
  return s;
}

bool Density::is_mixture() const {
  return std::holds_alternative<TruncatedMixture>(impl_);
}

const TruncatedMixture& Density::mixture() const {
  if (!is_mixture()) throw PreconditionError("density is not a mixture");
  return std::get<TruncatedMixture>(impl_);
}

const UniformBox& Density::uniform() const {
  if (is_mixture()) throw PreconditionError("density is not uniform");
  return std::get<UniformBox>(impl_);
}

namespace {

Vector vec1(double a) {
  Vector v(1);
  v[0] = a;
  return v;
}

Vector vec2(double a, double b) {
  Vector v(2);
  v[0] = a;
  v[1] = b;
  return v;
}

}  // namespace

Density preset_density(const std::string& name, const QuadratureSpec& quad) {
  if (name == "example1") {
    std::vector<GaussianComponent> comps = {
        {0.66, vec1(0.0), 0.4}, {0.17, vec1(0.5), 0.1}, {0.17, vec1(1.0), 0.1}};
    return Density(TruncatedMixture::normalize(comps, 0.1, 1, quad), name);
  }
  if (name == "example2") {
    std::vector<GaussianComponent> comps = {{0.4, vec2(-1.1, 0.0), 0.2},
                                            {0.55, vec2(0.0, 0.0), 0.4},
                                            {0.05, vec2(1.3, 0.0), 0.1}};
    return Density(TruncatedMixture::normalize(comps, 0.01, 2, quad), name);
  }
  if (name == "example3") {
    std::vector<GaussianComponent> comps = {{0.8, vec1(0.2), 0.05},
                                            {0.2, vec1(0.4), 0.03}};
    return Density(TruncatedMixture::normalize(comps, 0.1, 1, quad), name);
  }
  if (name == "uniform01") {
    Box box{vec1(0.0), vec1(1.0)};
    return Density(UniformBox(box), name);
  }
  throw ConfigError("unknown density preset '" + name + "'");
}

std::vector<std::string> preset_density_names() {
  return {"example1", "example2", "example3", "uniform01"};
}

double support_min_density(const Density& density, int grid_points_per_dim) {
  const Box& box = density.bounding_box();
  const int d = density.dim();
  const int g = std::max(grid_points_per_dim, 2);
  Vector step = (box.hi - box.lo) / static_cast<double>(g - 1);
  double pmin = std::numeric_limits<double>::infinity();
  std::vector<int> idx(d, 0);
  Vector x(d);
  const long long cells = static_cast<long long>(std::pow(g, d));
  for (long long cell = 0; cell < cells; ++cell) {
    long long rest = cell;
    for (int c = 0; c < d; ++c) {
      idx[c] = static_cast<int>(rest % g);
      rest /= g;
      x[c] = box.lo[c] + idx[c] * step[c];
    }
    const double p = density.evaluate(x);
    if (p > 0.0) pmin = std::min(pmin, p);
  }
  return std::isfinite(pmin) ? pmin : 0.0;
}

}  // namespace geocut
