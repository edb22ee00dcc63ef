#include <doctest.h>

#include <cmath>
#include <limits>

#include "geocut/errors.hpp"
#include "geocut/limits.hpp"

using namespace geocut;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("unit ball volumes") {
  CHECK(unit_ball_volume(0) == 1.0);
  CHECK(unit_ball_volume(1) == 2.0);
  CHECK(unit_ball_volume(2) == doctest::Approx(M_PI).epsilon(1e-15));
  CHECK(unit_ball_volume(3) == doctest::Approx(4.0 * M_PI / 3.0).epsilon(1e-15));
  const auto eta = unit_ball_volumes(3);
  CHECK(eta.size() == 4);
  CHECK(eta[2] == doctest::Approx(M_PI));
}

TEST_CASE("unit weight cap and ball integrals") {
  // d = 1, r = 2, q = 1: eta_0 * 2^2 / 2 = 2
  CHECK(cap_integral(WeightFunction::unit(), 2.0, 1, 1) == doctest::Approx(2.0));
  // closed form eta_{d-1} r^{d+1} / (d+1), equal for q = 1, 2
  CHECK(cap_integral(WeightFunction::unit(), 0.7, 3, 2) ==
        doctest::Approx(M_PI * std::pow(0.7, 4) / 4.0));
  // ball: eta_d r^d
  CHECK(ball_integral(WeightFunction::unit(), 0.5, 2, 1) ==
        doctest::Approx(M_PI * 0.25));
  CHECK(ball_integral(WeightFunction::unit(), 0.5, 2, 2) ==
        doctest::Approx(M_PI * 0.25));

  CHECK_THROWS_AS(cap_integral(WeightFunction::unit(), kInf, 1, 1),
                  InfiniteRadiusUnitWeightError);
  CHECK_THROWS_AS(ball_integral(WeightFunction::unit(), kInf, 2, 1),
                  InfiniteRadiusUnitWeightError);
}

TEST_CASE("gaussian cap integral at infinite radius is sigma/sqrt(2 pi)") {
  for (int d = 1; d <= 3; ++d)
    for (double sigma : {0.01, 0.1, 0.37, 1.3}) {
      const double fc =
          cap_integral(WeightFunction::gaussian(sigma, d), kInf, d, 1);
      CHECK(std::abs(fc / sigma - 1.0 / std::sqrt(2.0 * M_PI)) <= 1e-10);
    }
}

TEST_CASE("gaussian ball integral at infinite radius is one") {
  for (int d = 1; d <= 3; ++d)
    for (double sigma : {0.05, 0.5, 2.0}) {
      const double fb =
          ball_integral(WeightFunction::gaussian(sigma, d), kInf, d, 1);
      CHECK(std::abs(fb - 1.0) <= 1e-10);
    }
}

TEST_CASE("cap and ball integrals are monotone in the radius") {
  const WeightFunction w = WeightFunction::gaussian(0.3, 2);
  double prev_c = 0.0, prev_b = 0.0;
  for (double r : {0.1, 0.3, 0.9, 2.7}) {
    const double c = cap_integral(w, r, 2, 1);
    const double b = ball_integral(w, r, 2, 1);
    CHECK(c >= prev_c);
    CHECK(b >= prev_b);
    prev_c = c;
    prev_b = b;
  }
}

TEST_CASE("gaussian small-ratio expansions hold with the stated constants") {
  // | sigma^{qd} r^{-(d+1)} F_C - eta_{d-1} / ((d+1) (2 pi)^{qd/2}) | <= 2 (r/sigma)^2
  // | sigma^{qd} r^{-d} F_B - eta_d / (2 pi)^{qd/2} | <= 3 (r/sigma)^2
  const double sigma = 1.0;
  for (int d = 1; d <= 3; ++d)
    for (int q = 1; q <= 2; ++q)
      for (double ratio : {0.01, 0.05, 0.1}) {
        const double r = ratio * sigma;
        const WeightFunction w = WeightFunction::gaussian(sigma, d);
        const double fc = cap_integral(w, r, d, q);
        const double cap_target = unit_ball_volume(d - 1) /
                                  ((d + 1) * std::pow(2.0 * M_PI, 0.5 * q * d));
        const double cap_dev =
            std::abs(std::pow(sigma, q * d) * std::pow(r, -(d + 1)) * fc -
                     cap_target);
        CHECK(cap_dev <= 2.0 * ratio * ratio);

        const double fb = ball_integral(w, r, d, q);
        const double ball_target =
            unit_ball_volume(d) / std::pow(2.0 * M_PI, 0.5 * q * d);
        const double ball_dev =
            std::abs(std::pow(sigma, q * d) * std::pow(r, -d) * fb -
                     ball_target);
        CHECK(ball_dev <= 3.0 * ratio * ratio);
      }
}

TEST_CASE("cap ball bundle") {
  const auto cb = cap_ball_integrals(WeightFunction::unit(), 1.0, 2);
  CHECK(cb.f_c1 == cb.f_c2);
  CHECK(cb.f_b1 == doctest::Approx(M_PI));
  CHECK(cb.eta.size() == 3);
}

TEST_CASE("monte carlo cap oracle") {
  // unit weight, d = 1, R = 1: exact value eta_0 / 2 = 0.5
  const auto est = mc_cap_oracle(WeightFunction::unit(), 1.0, 1, 400000, 99);
  CHECK(est.std_error > 0.0);
  CHECK(std::abs(est.value - 0.5) <= 3.0 * est.std_error);

  // gaussian, d = 2: matches the quadrature cap integral
  const WeightFunction w = WeightFunction::gaussian(0.3, 2);
  const double exact = cap_integral(w, 1.0, 2, 1);
  const auto est2 = mc_cap_oracle(w, 1.0, 2, 400000, 100);
  CHECK(std::abs(est2.value - exact) <= 3.0 * est2.std_error);
}

TEST_CASE("monte carlo ball oracle") {
  const WeightFunction w = WeightFunction::gaussian(0.4, 3);
  const double exact = ball_integral(w, 0.9, 3, 1);
  const auto est = mc_ball_oracle(w, 0.9, 3, 400000, 101);
  CHECK(std::abs(est.value - exact) <= 3.0 * est.std_error);

  const auto unit_est = mc_ball_oracle(WeightFunction::unit(), 0.5, 2, 1000, 7);
  CHECK(unit_est.value == doctest::Approx(M_PI * 0.25));  // zero variance
  CHECK(unit_est.std_error == 0.0);
}

TEST_CASE("family table row spot checks") {
  const FamilyLaw knn1 = family_law(GraphFamily::knn_unweighted, 1);
  CHECK(knn1.cut_coeff == doctest::Approx(0.25));
  CHECK(knn1.cut_exp == 0.0);
  CHECK(knn1.vol_coeff == 1.0);
  CHECK(knn1.vol_exp == 1.0);

  const FamilyLaw r1 = family_law(GraphFamily::r_unweighted, 1);
  CHECK(r1.cut_coeff == doctest::Approx(1.0));
  CHECK(r1.cut_exp == 2.0);
  CHECK(r1.vol_coeff == doctest::Approx(2.0));  // eta_1
  CHECK(r1.vol_exp == 2.0);

  const FamilyLaw complete = family_law(GraphFamily::complete_gauss, 2);
  CHECK(complete.cut_coeff == doctest::Approx(2.0 / std::sqrt(2.0 * M_PI)));
  CHECK(complete.vol_coeff == 1.0);
  CHECK(complete.vol_exp == 2.0);

  // gaussian sigma-dominated rows carry the (2 pi)^{d/2} correction
  const FamilyLaw rg = family_law(GraphFamily::r_gauss_sigma_dom, 2);
  CHECK(rg.cut_coeff ==
        doctest::Approx(2.0 * 2.0 / (3.0 * 2.0 * M_PI)));  // 2 eta_1/(3 (2pi))
  CHECK(rg.vol_coeff == doctest::Approx(M_PI / (2.0 * M_PI)));
}

TEST_CASE("limits on the uniform unit interval") {
  const Density u = preset_density("uniform01");
  const Hyperplane mid = Hyperplane::axis(0, 0.5, 1);

  CHECK(cut_limit(u, mid, GraphFamily::knn_unweighted) ==
        doctest::Approx(0.25).epsilon(1e-12));
  CHECK(cut_limit(u, mid, GraphFamily::r_unweighted) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(vol_limit(u, mid, true, GraphFamily::knn_unweighted) ==
        doctest::Approx(0.5).epsilon(1e-12));
  CHECK(vol_limit(u, mid, true, GraphFamily::r_unweighted) ==
        doctest::Approx(1.0).epsilon(1e-12));

  const LimitReport knn = ncut_limit(u, mid, GraphFamily::knn_unweighted);
  CHECK(knn.ncut_lim == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(knn.cheeger_lim == doctest::Approx(0.5).epsilon(1e-12));

  const LimitReport r = ncut_limit(u, mid, GraphFamily::r_unweighted);
  CHECK(r.ncut_lim == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(r.cheeger_lim == doctest::Approx(1.0).epsilon(1e-12));

  // symmetric density, centered plane: equal volume limits
  CHECK(knn.vol_lim_plus == doctest::Approx(knn.vol_lim_minus).epsilon(1e-12));
}

TEST_CASE("volume limits are additive over the two halfspaces") {
  const Density ex1 = preset_density("example1");
  const Hyperplane plane = Hyperplane::axis(0, 0.4, 1);
  const double vp = vol_limit(ex1, plane, true, GraphFamily::knn_unweighted);
  const double vm = vol_limit(ex1, plane, false, GraphFamily::knn_unweighted);
  // the kNN volume integrand is p itself, so the halves sum to the full mass
  CHECK(vp + vm == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("1d knn cut limit does not depend on the density value") {
  const Density ex1 = preset_density("example1");
  const Density ex3 = preset_density("example3");
  // different densities at the cut point, same exponent 1 - 1/d = 0
  const Hyperplane a = Hyperplane::axis(0, 0.3, 1);
  const Hyperplane b = Hyperplane::axis(0, 0.2, 1);
  const double c1 = cut_limit(ex1, a, GraphFamily::knn_unweighted);
  const double c3 = cut_limit(ex3, b, GraphFamily::knn_unweighted);
  CHECK(c1 == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(c3 == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("limit report satisfies its defining identities") {
  const Density ex1 = preset_density("example1");
  const Hyperplane plane = Hyperplane::axis(0, 0.7, 1);
  for (GraphFamily fam :
       {GraphFamily::knn_unweighted, GraphFamily::r_unweighted,
        GraphFamily::complete_gauss, GraphFamily::knn_gauss_sigma_dom}) {
    const LimitReport rep = ncut_limit(ex1, plane, fam);
    const double ncut_check =
        rep.cut_lim * (1.0 / rep.vol_lim_plus + 1.0 / rep.vol_lim_minus);
    const double cheeger_check =
        rep.cut_lim / std::min(rep.vol_lim_plus, rep.vol_lim_minus);
    CHECK(std::abs(rep.ncut_lim - ncut_check) <=
          1e-12 * std::abs(rep.ncut_lim));
    CHECK(std::abs(rep.cheeger_lim - cheeger_check) <=
          1e-12 * std::abs(rep.cheeger_lim));
  }
}

TEST_CASE("axis alignment and dimension guards") {
  const Density ex2 = preset_density("example2");
  Vector diag(2);
  diag << 1.0, 1.0;
  CHECK_THROWS_AS(
      cut_limit(ex2, Hyperplane::general(diag, 0.0), GraphFamily::r_unweighted),
      AxisAlignedNormalRequiredError);

  Box box4{Vector::Zero(4), Vector::Ones(4)};
  const Density u4(UniformBox(box4), "u4");
  CHECK_THROWS_AS(cut_limit(u4, Hyperplane::axis(0, 0.5, 4),
                            GraphFamily::r_unweighted),
                  UnsupportedDimensionError);
}

TEST_CASE("uniform 3d slice and halfspace integrals") {
  Box box3{Vector::Zero(3), Vector::Ones(3)};
  const Density u3(UniformBox(box3), "u3");
  const Hyperplane plane = Hyperplane::axis(0, 0.25, 3);
  // p = 1: cut integrand is the unit slice area, volume the box fraction
  const FamilyLaw law = family_law(GraphFamily::r_unweighted, 3);
  CHECK(cut_limit(u3, plane, GraphFamily::r_unweighted) ==
        doctest::Approx(law.cut_coeff).epsilon(1e-9));
  CHECK(vol_limit(u3, plane, false, GraphFamily::r_unweighted) ==
        doctest::Approx(0.25 * law.vol_coeff).epsilon(2e-2));
}

TEST_CASE("optimal cut sweep on the uniform interval") {
  const Density u = preset_density("uniform01");
  std::vector<double> offsets;
  for (double b = 0.1; b <= 0.901; b += 0.05) offsets.push_back(b);

  for (GraphFamily fam :
       {GraphFamily::knn_unweighted, GraphFamily::r_unweighted}) {
    const SweepResult res = optimal_cut_sweep(u, fam, 0, offsets);
    CHECK(res.best_offset == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(res.curve.size() == offsets.size());
    // symmetric curve
    const size_t m = res.curve.size();
    for (size_t i = 0; i < m / 2; ++i)
      CHECK(res.curve[i].ncut_lim ==
            doctest::Approx(res.curve[m - 1 - i].ncut_lim).epsilon(1e-9));
  }

  // single offset comes straight back
  const SweepResult single =
      optimal_cut_sweep(u, GraphFamily::r_unweighted, 0, {0.3});
  CHECK(single.best_offset == 0.3);

  // offsets outside the support projection are all degenerate
  CHECK_THROWS_AS(
      optimal_cut_sweep(u, GraphFamily::r_unweighted, 0, {-2.0, -1.5}),
      AllDegenerateError);
}

TEST_CASE("example-1 sweep separates the two graph families") {
  const Density ex1 = preset_density("example1");
  const Box& box = ex1.bounding_box();
  std::vector<double> offsets;
  for (double b = box.lo[0] + 1e-3; b < box.hi[0] - 1e-3; b += 5e-3)
    offsets.push_back(b);
  const SweepResult knn =
      optimal_cut_sweep(ex1, GraphFamily::knn_unweighted, 0, offsets);
  const SweepResult r =
      optimal_cut_sweep(ex1, GraphFamily::r_unweighted, 0, offsets);
  // frozen from the fine-grid oracle run: 0.2865 and 0.7655
  CHECK(knn.best_offset == doctest::Approx(0.2865).epsilon(0.03));
  CHECK(r.best_offset == doctest::Approx(0.7655).epsilon(0.03));
  // opposite sides of the middle mode at 0.5
  CHECK(knn.best_offset < 0.5);
  CHECK(r.best_offset > 0.5);
}
