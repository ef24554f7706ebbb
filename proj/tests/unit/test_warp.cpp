#include <gtest/gtest.h>

#include <cmath>

#include "hsclab/error.hpp"
#include "hsclab/random.hpp"
#include "hsclab/warp.hpp"

using namespace hsclab;

namespace {

FibrationSpec constant_coupled() {
  // psi(lambda) = [[2, 1], [1, lambda]] everywhere.
  return make_fibration("const", 1, 1, {{"2"}}, {{"1"}}, {{"1"}}, 0.0, ChartBox::polydisk(2));
}

}  // namespace

TEST(Warp, Example1AssemblesPaperG) {
  for (double lam : {0.5, 1.0, 5.0}) {
    const MetricSpec psi = assemble_psi(example1_fibration(), lam);
    const MetricSpec ref = catalog("paper_G(" + format_real(lam) + ")");
    ASSERT_EQ(psi.dim(), ref.dim());
    const CVec p{{0.3, 0.1}, {-0.2, 0.4}};
    EXPECT_LE((evaluate_matrix(psi, p) - evaluate_matrix(ref, p)).norm(), 1e-15) << lam;
  }
}

TEST(Warp, AssembleBlocks) {
  const FibrationSpec f = coupled_fibration();
  const MetricSpec psi = assemble_psi(f, 3.0);
  EXPECT_EQ(psi.n, 4);
  EXPECT_EQ(psi.dim(), 4);
  const CVec p{{0.1, 0.0}, {0.0, 0.2}, {0.3, 0.1}, {-0.2, 0.0}};
  const Matrix g = evaluate_matrix(psi, p);
  EXPECT_NEAR(g(2, 2).real(), (0.5 + 3.0) / (1 + std::norm(p[2])), 1e-14);
  EXPECT_NEAR(std::abs(g(0, 3) - cplx(0.0, 0.1)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(g(3, 0) - cplx(0.0, -0.1)), 0.0, 1e-15);
  EXPECT_LE(hermitian_defect(g), 1e-15);
}

TEST(Warp, FixtureChecks) {
  EXPECT_THROW((void)make_fibration("bad", 1, 1, {{"z3"}}, {{"1"}}, {}, 0.0, ChartBox::polydisk(2)), Error);
  EXPECT_THROW((void)make_fibration("bad", 1, 1, {{"1", "0"}}, {{"1"}}, {}, 0.0, ChartBox::polydisk(2)), Error);
  EXPECT_THROW((void)make_fibration("bad", 1, 1, {{"1"}}, {{"1"}}, {{"1", "2"}}, 0.0, ChartBox::polydisk(2)),
               Error);
}

TEST(Warp, FiberAndBase) {
  const FibrationSpec f = warp_demo_fibration();
  const MetricSpec base = base_metric(f);
  EXPECT_EQ(base.n, 1);
  EXPECT_NEAR(hsc_at(base, CVec{{0.2, 0.1}}, CVec{1.0}), 2.0 / (1 + 0.05), 1e-12);
  const CVec t{{0.5, 0.0}};
  const MetricSpec fib = fiber_at(f, t);
  EXPECT_EQ(fib.n, 1);
  // The fiber is a constant multiple of fs_affine: curvature 4 / exp(|t|^2).
  EXPECT_NEAR(hsc_at(fib, CVec{{0.1, 0.3}}, CVec{1.0}), 4.0 / std::exp(0.25), 1e-12);
}

TEST(Warp, Mu0OfProductIsSmallest) {
  const Mu0Result r = mu0_search(product_fibration(), 32, 1);
  EXPECT_EQ(r.mu0, std::ldexp(1.0, kMu0MinExponent));
}

TEST(Warp, Mu0OfCoupledNeedsWeight) {
  const Mu0Result r = mu0_search(constant_coupled(), 16, 1);
  // [[2,1],[1,mu]] is positive definite iff mu > 1/2.
  EXPECT_EQ(r.mu0, 1.0);
}

TEST(Warp, LambdaSearchRejectsSemiPositiveFiber) {
  ScanParams p;
  p.grid_per_axis = 3;
  p.random_points = 4;
  try {
    (void)lambda_search(example1_fibration(), p);
    FAIL();
  } catch (const WitnessError& e) {
    EXPECT_EQ(e.code(), ErrorCode::HypothesisViolation);
  }
}

TEST(Warp, BlockDeterminant) {
  Rng rng(21);
  for (int t = 0; t < 50; ++t) {
    const int n = 2 + static_cast<int>(rng() % 5);
    const int p = 1 + static_cast<int>(rng() % static_cast<unsigned>(n - 1));
    const Matrix M = random_pd_matrix(n, rng);
    const cplx d = M.determinant();
    EXPECT_LE(std::abs(block_determinant(M, p) - d), 1e-10 * std::abs(d));
  }
}

TEST(Warp, RandomPdMatrixSpectrum) {
  Rng rng(22);
  const Matrix M = random_pd_matrix(4, rng);
  EXPECT_LE(hermitian_defect(M), 1e-14);
  EXPECT_GE(min_hermitian_eigenvalue(M), 0.5 - 1e-12);
}

TEST(Warp, ConstantCoupledInverseClosedForm) {
  const FibrationSpec f = constant_coupled();
  for (double lam : {1.0, 10.0, 1000.0}) {
    const Matrix g = evaluate_matrix(assemble_psi(f, lam), f.box.center());
    const Matrix inv = g.inverse();
    EXPECT_NEAR(inv(0, 0).real(), lam / (2 * lam - 1), 1e-12);
    EXPECT_NEAR(inv(1, 1).real(), 2 / (2 * lam - 1), 1e-12);
    EXPECT_NEAR(inv(0, 1).real(), -1 / (2 * lam - 1), 1e-12);
  }
  const std::vector<double> lams{100, 1000, 10000};
  const AsymptoticsReport r = block_inverse_asymptotics_check(f, f.box.center(), lams);
  EXPECT_TRUE(r.ok());
}

TEST(Warp, BlockDiagonalMixedInverseVanishes) {
  const FibrationSpec f = warp_demo_fibration();
  const std::vector<double> lams{100, 1000, 10000};
  const AsymptoticsReport r = block_inverse_asymptotics_check(f, CVec{{0.2, 0.0}, {0.1, 0.3}}, lams);
  EXPECT_TRUE(r.ok());
  for (const auto& term : r.terms) {
    if (term.name.find("h^{a x}") != std::string::npos) {
      EXPECT_TRUE(term.vanishes);
      for (double e : term.errors) EXPECT_EQ(e, 0.0);
    }
  }
}

TEST(Warp, ProductSubmanifoldEquality) {
  // Block-diagonal with a constant fiber: each slice is totally geodesic.
  const MetricSpec m = make_metric("prod", 2, {{formulas::kFsAffine, "0"}, {"0", formulas::kPaperBaseZ2}},
                                   ChartBox::polydisk(2));
  const std::vector<int> slice{0};
  const DecreasingReport r = submanifold_decreasing_check(m, slice, 200, 3);
  EXPECT_TRUE(r.ok());
  EXPECT_LE(r.max_abs_diff, 1e-10);
}

TEST(Warp, SubmanifoldDecreasing) {
  const std::vector<int> slice{1};
  const DecreasingReport r = submanifold_decreasing_check(catalog("paper_G(1)"), slice, 300, 4);
  EXPECT_TRUE(r.ok());
}

TEST(Warp, BaseNumeratorGrows) {
  const FibrationSpec f = warp_demo_fibration();
  const std::vector<double> lams{100, 1000, 10000};
  const CVec dir{1.0};
  const GrowthReport r = base_numerator_growth_check(f, f.box.center(), dir, lams);
  EXPECT_TRUE(r.ok);
  EXPECT_NEAR(r.slope, 1.0, 0.05);
}

TEST(Warp, FibrationJsonRoundTrip) {
  const FibrationSpec f = coupled_fibration();
  const std::string text = fibration_to_json(f);
  const FibrationSpec back = fibration_from_json(text);
  EXPECT_EQ(fibration_to_json(back), text);
  EXPECT_EQ(back.s, 2);
  EXPECT_EQ(back.m, 2);
  EXPECT_TRUE(back.coupled());
  EXPECT_EQ(back.mu0, 0.5);
  EXPECT_THROW((void)fibration_from_json(R"({"s":1})"), Error);
}
