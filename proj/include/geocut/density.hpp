#ifndef GEOCUT_DENSITY_HPP_
#define GEOCUT_DENSITY_HPP_

#include <string>
#include <variant>
#include <vector>

#include "geocut/quadrature.hpp"
#include "geocut/types.hpp"

namespace geocut {

struct GaussianComponent {
  double weight = 1.0;   // in (0, 1], pre-truncation weights sum to 1
  Vector mean;
  double std = 1.0;      // isotropic
};

struct QuadratureSpec {
  double abs_tol_1d = 1e-9;
  double abs_tol_2d = 1e-7;
  int scan_points = 1024;
  int mc_strata_per_dim = 8;
  long long mc_samples_per_stratum = 128;
  uint64_t mc_seed = 20240901;
};

struct SampleSet {
  Matrix points;  // n x d
  uint64_t seed = 0;
  std::string density_id;
};

// Isotropic Gaussian mixture set to zero below a threshold and rescaled to
// integrate to one over its bounding box.
class TruncatedMixture {
 public:
  // Computes the normalizer Z = integral of the raw mixture over {raw >= theta}
  // (adaptive quadrature for d <= 2, stratified Monte Carlo for d >= 3) and a
  // bounding box from the component means +- 8 std, tightened to the support.
  static TruncatedMixture normalize(std::vector<GaussianComponent> components,
                                    double theta, int dim,
                                    const QuadratureSpec& quad = {});

  double raw(const Vector& x) const;       // untruncated mixture density
  double evaluate(const Vector& x) const;  // raw/Z on the support, else 0

  Matrix sample(int n, uint64_t seed) const;  // rejection from the raw mixture

  int dim() const { return dim_; }
  double theta() const { return theta_; }
  double normalizer() const { return z_; }
  const Box& bounding_box() const { return box_; }
  const std::vector<GaussianComponent>& components() const { return components_; }
  double normalizer_error() const { return z_error_; }

 private:
  TruncatedMixture() = default;

  int dim_ = 0;
  std::vector<GaussianComponent> components_;
  double theta_ = 0.0;
  double z_ = 1.0;
  double z_error_ = 0.0;
  Box box_;
  std::vector<double> cumulative_weights_;
};

class UniformBox {
 public:
  explicit UniformBox(Box box);

  double evaluate(const Vector& x) const {
    return box_.contains(x) ? value_ : 0.0;
  }
  Matrix sample(int n, uint64_t seed) const;

  int dim() const { return box_.dim(); }
  const Box& bounding_box() const { return box_; }
  double value() const { return value_; }

 private:
  Box box_;
  double value_;
};

// Value-semantic density handle; immutable after construction, safe to share
// across threads.
class Density {
 public:
  Density(TruncatedMixture m, std::string id = "mixture");
  Density(UniformBox u, std::string id = "uniform");

  int dim() const;
  double evaluate(const Vector& x) const;
  const Box& bounding_box() const;
  SampleSet sample(int n, uint64_t seed) const;

  const std::string& id() const { return id_; }
  bool is_mixture() const;
  const TruncatedMixture& mixture() const;  // throws if not a mixture
  const UniformBox& uniform() const;

 private:
  std::variant<TruncatedMixture, UniformBox> impl_;
  std::string id_;
};

// Named presets; the three mixture presets carry the exact parameter tables
// used throughout the experiments.
Density preset_density(const std::string& name, const QuadratureSpec& quad = {});
std::vector<std::string> preset_density_names();

// Advisory: smallest positive density value seen on a regular grid over the
// bounding box. The limit quantities are only meaningful when this is
// bounded away from zero on the support.
double support_min_density(const Density& density, int grid_points_per_dim = 256);

}  // namespace geocut

#endif  // GEOCUT_DENSITY_HPP_
