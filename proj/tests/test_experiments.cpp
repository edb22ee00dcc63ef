#include <doctest.h>

#include <cmath>

#include "geocut/errors.hpp"
#include "geocut/experiments.hpp"
#include "geocut/rng.hpp"

using namespace geocut;

namespace {

Labels labels_of(std::initializer_list<bool> bits) {
  Labels l(static_cast<Eigen::Index>(bits.size()));
  Eigen::Index i = 0;
  for (bool b : bits) l[i++] = b;
  return l;
}

}  // namespace

TEST_CASE("minimal matching distance basics") {
  const Labels a = labels_of({true, true, true, false});
  CHECK(minimal_matching_distance(a, a) == 0.0);

  // complementary labelings are a relabeling of each other
  const Labels comp = labels_of({false, false, false, true});
  CHECK(minimal_matching_distance(a, comp) == 0.0);

  const Labels b = labels_of({true, true, true, true});
  CHECK(minimal_matching_distance(a, b) == doctest::Approx(0.25));

  CHECK_THROWS_AS(minimal_matching_distance(a, labels_of({true})),
                  LengthMismatchError);
}

TEST_CASE("minimal matching distance is a pseudometric") {
  Rng rng(3);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 5 + rng.uniform_index(20);
    Labels x(n), y(n), z(n);
    for (int i = 0; i < n; ++i) {
      x[i] = rng.uniform() < 0.5;
      y[i] = rng.uniform() < 0.5;
      z[i] = rng.uniform() < 0.5;
    }
    const double dxy = minimal_matching_distance(x, y);
    const double dyx = minimal_matching_distance(y, x);
    const double dxz = minimal_matching_distance(x, z);
    const double dyz = minimal_matching_distance(y, z);
    CHECK(dxy == dyx);
    CHECK(dxy >= 0.0);
    CHECK(dxy <= 0.5);
    CHECK(dxz <= dxy + dyz + 1e-15);
  }
}

TEST_CASE("1d cluster boundary") {
  Matrix pts(3, 1);
  pts << 0.1, 0.2, 0.8;
  CHECK(cluster_boundary_1d(pts, labels_of({false, false, true})).boundary ==
        doctest::Approx(0.5));

  // interleaved labels fall back to the majority split, flagged
  const BoundaryResult inter =
      cluster_boundary_1d(pts, labels_of({false, true, false}));
  CHECK(inter.interleaved);
  CHECK(inter.disagreements == 1);
  CHECK(inter.boundary == doctest::Approx(0.15));

  Matrix two(2, 1);
  two << 0.0, 1.0;
  CHECK(cluster_boundary_1d(two, labels_of({false, true})).boundary ==
        doctest::Approx(0.5));

  CHECK_THROWS_AS(cluster_boundary_1d(pts, labels_of({true, true, true})),
                  SingleClusterError);
}

TEST_CASE("parameter schedules") {
  // k_n = (n^3 log n)^{1/4}
  ParamSchedule k_rule{1.0, 0.75, 0.25};
  CHECK(k_rule.value_int(500) == 167);
  CHECK(k_rule.value_int(2000) == 497);
  // r_n = (log n / n)^{1/4}
  ParamSchedule r_rule{1.0, -0.25, 0.25};
  CHECK(r_rule.value(8000) == doctest::Approx(0.18307).epsilon(1e-4));
  // clamped to [1, n-1]
  ParamSchedule big{100.0, 1.0, 0.0};
  CHECK(big.value_int(50) == 49);
}

TEST_CASE("family graphs carry the right spec") {
  Rng rng(5);
  Matrix pts(30, 1);
  for (int i = 0; i < 30; ++i) pts(i, 0) = rng.uniform();
  auto knn = build_family_graph(GraphFamily::knn_unweighted, pts,
                                GraphKind::knn_symmetric, 3, 0.0, 0.0);
  CHECK(knn.spec.kind == GraphKind::knn_symmetric);
  CHECK_FALSE(knn.spec.weight.is_gaussian());

  auto rg = build_family_graph(GraphFamily::r_gauss_sigma_dom, pts,
                               GraphKind::knn_symmetric, 0, 0.2, 0.5);
  CHECK(rg.spec.kind == GraphKind::r_neighborhood);
  CHECK(rg.spec.weight.is_gaussian());
  CHECK(rg.spec.regime == GaussianRegime::sigma_dominates_r);

  auto cg = build_family_graph(GraphFamily::complete_gauss, pts,
                               GraphKind::knn_symmetric, 0, 0.0, 0.3);
  CHECK(cg.spec.kind == GraphKind::complete);
}

TEST_CASE("comparison runs are reproducible") {
  const Density ex3 = preset_density("example3");
  ComparisonConfig config;
  config.n = 80;
  config.reps = 3;
  config.k = 6;
  config.base_seed = 21;
  config.threads = 2;

  const ComparisonResult a = run_comparison(ex3, config);
  config.threads = 1;
  const ComparisonResult b = run_comparison(ex3, config);

  CHECK(a.d_knn.mean == b.d_knn.mean);
  CHECK(a.d_r.mean == b.d_r.mean);
  CHECK(a.d_cross.mean == b.d_cross.mean);
  CHECK(a.d_cross_all_pairs.mean == b.d_cross_all_pairs.mean);
  REQUIRE(a.r_values.size() == b.r_values.size());
  for (size_t i = 0; i < a.r_values.size(); ++i)
    CHECK(a.r_values[i] == b.r_values[i]);
  for (int rep = 0; rep < config.reps; ++rep)
    CHECK((a.knn_labels[rep] == b.knn_labels[rep]).all());

  CHECK(a.d_knn.pairs == 3);
  CHECK(a.d_cross.pairs == 3);
  CHECK(a.d_cross_all_pairs.pairs == 9);
  CHECK(a.knn_boundaries.size() == 3);
}

TEST_CASE("convergence run emits one row per grid point") {
  const Density u = preset_density("uniform01");
  ConvergenceConfig config;
  config.family = GraphFamily::r_unweighted;
  config.n_grid = {300};
  config.schedule = ParamSchedule{1.0, -0.25, 0.25};
  config.reps = 4;
  config.base_seed = 7;
  config.threads = 2;

  const ConvergenceResult res = run_convergence(u, config);
  CHECK(res.limit == doctest::Approx(2.0).epsilon(1e-10));
  REQUIRE(res.rows.size() == 1);
  CHECK(res.rows[0].n == 300);
  CHECK(res.rows[0].param == doctest::Approx(std::pow(std::log(300.0) / 300.0, 0.25)));
  // far from asymptopia but the scaled quantity is in the right ballpark
  CHECK(res.rows[0].scaled_ncut_mean > 1.0);
  CHECK(res.rows[0].scaled_ncut_mean < 4.0);
  CHECK(res.rows[0].mean_abs_error > 0.0);
}

TEST_CASE("scaled ncut is invariant under joint translation") {
  const Density u = preset_density("uniform01");
  const SampleSet s = u.sample(200, 13);
  const double r = 0.15;
  const auto g = build_r_graph(s.points, r, WeightFunction::unit());
  const Hyperplane plane = Hyperplane::axis(0, 0.5, 1);
  const QualityReport rep = ncut(g, induce_partition(s.points, plane));

  const double shift = 3.75;
  Matrix moved = s.points.array() + shift;
  const auto g2 = build_r_graph(moved, r, WeightFunction::unit());
  const Hyperplane plane2 = Hyperplane::axis(0, 0.5 + shift, 1);
  const QualityReport rep2 = ncut(g2, induce_partition(moved, plane2));

  CHECK(rep.scaled_ncut == doctest::Approx(rep2.scaled_ncut).epsilon(1e-12));
}

TEST_CASE("boundary histogram smoke run") {
  const Density ex3 = preset_density("example3");
  HistogramConfig config;
  config.n = 300;
  config.reps = 4;
  config.k = 10;
  config.sweep_step = 5e-3;
  config.base_seed = 3;
  config.threads = 2;

  const HistogramResult res = run_boundary_histogram(ex3, config);
  REQUIRE(res.families.size() == 2);
  const Box& box = ex3.bounding_box();
  for (const FamilyHistogram& h : res.families) {
    CHECK(h.boundaries.size() == 4);
    for (double b : h.boundaries) {
      CHECK(b >= box.lo[0]);
      CHECK(b <= box.hi[0]);
    }
    CHECK(h.sweep_best_offset > box.lo[0]);
    CHECK(h.sweep_best_offset < box.hi[0]);
  }
  // single rep gives a single boundary value
  config.reps = 1;
  config.families = {GraphFamily::r_unweighted};
  const HistogramResult one = run_boundary_histogram(ex3, config);
  CHECK(one.families[0].boundaries.size() == 1);
  CHECK(one.families[0].std == 0.0);
}
