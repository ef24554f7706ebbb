#include <gtest/gtest.h>

#include <cmath>

#include "hsclab/curvature.hpp"
#include "hsclab/error.hpp"
#include "hsclab/random.hpp"

using namespace hsclab;

namespace {

CVec random_point(const MetricSpec& m, Rng& rng) { return m.box.sample(rng); }

}  // namespace

TEST(Curvature, PoincareIsMinusFour) {
  const MetricSpec m = catalog("poincare");
  Rng rng(11);
  for (int t = 0; t < 50; ++t) {
    const CVec p = random_point(m, rng);
    const CVec xi{complex_gaussian(rng)};
    EXPECT_NEAR(hsc_at(m, p, xi), -4.0, 1e-9);
  }
}

TEST(Curvature, FubiniStudyIsPlusFour) {
  const MetricSpec m = catalog("fs_affine");
  Rng rng(12);
  for (int t = 0; t < 50; ++t) {
    const CVec p = random_point(m, rng);
    const CVec xi{complex_gaussian(rng)};
    EXPECT_NEAR(hsc_at(m, p, xi), 4.0, 1e-9);
  }
}

TEST(Curvature, PaperBaseClosedForm) {
  const MetricSpec m = catalog("paper_base");
  Rng rng(13);
  for (int t = 0; t < 50; ++t) {
    const CVec p = random_point(m, rng);
    const double r = std::norm(p[0]);
    EXPECT_NEAR(hsc_at(m, p, CVec{1.0}), 2.0 / (1.0 + r), 1e-12);
  }
}

TEST(Curvature, FlatIsZero) {
  const MetricSpec m = catalog("flat(3)");
  Rng rng(14);
  const CVec p = random_point(m, rng);
  const CurvatureTensor R = curvature(metric_jet(m, p));
  for (const cplx& v : R.data()) EXPECT_EQ(std::abs(v), 0.0);
}

TEST(Curvature, PaperFiberVanishesAtOrigin) {
  const MetricSpec fib = restrict(catalog("paper_fiber"), {{1, cplx(0.0)}});
  EXPECT_NEAR(hsc_at(fib, CVec{0.0}, CVec{1.0}), 0.0, 1e-9);
}

TEST(Curvature, GaussianEqualsHscInOneDimension) {
  Rng rng(15);
  for (const char* name : {"poincare", "fs_affine", "paper_base", "flat(1)"}) {
    const MetricSpec m = catalog(name);
    for (int t = 0; t < 20; ++t) {
      const CVec p = random_point(m, rng);
      EXPECT_NEAR(gaussian_curvature_1d(m, p), hsc_at(m, p, CVec{1.0}), 1e-9) << name;
    }
  }
}

TEST(Curvature, PairSymmetry) {
  for (const char* name : {"paper_G(1)", "warp_demo(10)"}) {
    const MetricSpec m = catalog(name);
    Rng rng(16);
    const CurvatureTensor R = curvature(metric_jet(m, random_point(m, rng)));
    EXPECT_LE(R.pair_symmetry_defect(), 1e-12) << name;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k)
          for (int l = 0; l < 2; ++l) EXPECT_LE(std::abs(R(i, j, k, l) - std::conj(R(j, i, l, k))), 1e-10);
  }
}

TEST(Curvature, ScaleInvariantInDirection) {
  const MetricSpec m = catalog("warp_demo(10)");
  Rng rng(17);
  const CVec p = random_point(m, rng);
  const MetricJet mj = metric_jet(m, p);
  const CurvatureTensor R = curvature(mj);
  const CVec xi{complex_gaussian(rng), complex_gaussian(rng)};
  const double k = hsc(mj, R, xi);
  for (int t = 0; t < 100; ++t) {
    const cplx c = complex_gaussian(rng) * 3.0;
    const CVec scaled{c * xi[0], c * xi[1]};
    EXPECT_NEAR(hsc(mj, R, scaled), k, 1e-12 * std::abs(k));
  }
}

TEST(Curvature, AdMatchesFiniteDifferences) {
  Rng rng(18);
  for (const auto& name : catalog_names()) {
    const MetricSpec m = catalog(name);
    for (int t = 0; t < 5; ++t) {
      const CVec p = random_point(m, rng);
      const CurvatureTensor a = curvature(metric_jet(m, p));
      const CurvatureTensor f = curvature(metric_jet_fd(m, p));
      double scale = 0.0;
      for (const cplx& v : a.data()) scale = std::max(scale, std::abs(v));
      for (std::size_t q = 0; q < a.data().size(); ++q) {
        EXPECT_LE(std::abs(a.data()[q] - f.data()[q]), 1e-6 * std::max(scale, 1.0)) << name;
      }
    }
  }
}

TEST(Curvature, ZeroDirectionThrows) {
  const MetricSpec m = catalog("poincare");
  EXPECT_THROW((void)hsc_at(m, CVec{0.0}, CVec{0.0}), Error);
}

TEST(Curvature, IllConditionedInverseThrows) {
  Matrix g(2, 2);
  g << 1.0, 0.0, 0.0, 1e-14;
  EXPECT_THROW((void)metric_inverse(g), Error);
}

TEST(Curvature, RestrictFreezesCoordinates) {
  const MetricSpec m = catalog("paper_G(1)");
  const MetricSpec r = restrict(m, {{0, cplx(0.5)}});
  EXPECT_EQ(r.n, 1);
  const CVec full{0.5, {0.2, 0.1}};
  const CVec part{{0.2, 0.1}};
  EXPECT_NEAR(std::abs(evaluate_matrix(m, full)(1, 1) - evaluate_matrix(r, part)(0, 0)), 0.0, 1e-15);
}
