#include <gtest/gtest.h>

#include <cmath>

#include "hsclab/expr.hpp"
#include "hsclab/jet.hpp"

using namespace hsclab;

namespace {

void expect_close(cplx a, cplx b, double tol) {
  EXPECT_NEAR(a.real(), b.real(), tol);
  EXPECT_NEAR(a.imag(), b.imag(), tol);
}

}  // namespace

TEST(Jet, SeedCoordinate) {
  const CVec p{{0.3, -0.2}, {0.1, 0.5}};
  const Jet2 z2 = seed(2, p, 1);
  expect_close(z2.value(), p[1], 0);
  EXPECT_EQ(z2.d(1), cplx(1.0));
  EXPECT_EQ(z2.d(0), cplx(0.0));
  EXPECT_EQ(z2.dbar(1), cplx(0.0));
  const Jet2 zb = seed(2, p, 0, Variable::zbar);
  EXPECT_EQ(zb.value(), std::conj(p[0]));
  EXPECT_EQ(zb.dbar(0), cplx(1.0));
  for (int k = 0; k < 2; ++k)
    for (int l = 0; l < 2; ++l) EXPECT_EQ(zb.ddbar(k, l), cplx(0.0));
}

TEST(Jet, ModulusSquared) {
  const cplx c{0.7, -0.4};
  const CVec p{c};
  const Jet2 j = seed(1, p, 0) * seed(1, p, 0, Variable::zbar);
  expect_close(j.value(), std::norm(c), 1e-15);
  expect_close(j.d(0), std::conj(c), 1e-15);
  expect_close(j.dbar(0), c, 1e-15);
  expect_close(j.ddbar(0, 0), 1.0, 1e-15);
}

TEST(Jet, ExpOfModulusAtOrigin) {
  const CVec p{0.0};
  const Jet2 j = exp(seed(1, p, 0) * seed(1, p, 0, Variable::zbar));
  expect_close(j.value(), 1.0, 1e-15);
  expect_close(j.d(0), 0.0, 1e-15);
  expect_close(j.ddbar(0, 0), 1.0, 1e-15);
}

TEST(Jet, ConjInvolution) {
  const CVec p{{0.2, 0.3}, {-0.4, 0.1}};
  const Jet2 j = exp(seed(2, p, 0) * seed(2, p, 1, Variable::zbar)) / (cplx(2.0) * seed(2, p, 1) + seed(2, p, 0));
  const Jet2 back = conj(conj(j));
  EXPECT_EQ(back.value(), j.value());
  for (int k = 0; k < 2; ++k) {
    EXPECT_EQ(back.d(k), j.d(k));
    EXPECT_EQ(back.dbar(k), j.dbar(k));
    for (int l = 0; l < 2; ++l) EXPECT_EQ(back.ddbar(k, l), j.ddbar(k, l));
  }
}

TEST(Jet, ConjSwapsSlots) {
  const CVec p{{0.2, 0.3}};
  const Jet2 j = ipow(seed(1, p, 0), 3) * seed(1, p, 0, Variable::zbar);
  const Jet2 c = conj(j);
  expect_close(c.d(0), std::conj(j.dbar(0)), 1e-15);
  expect_close(c.dbar(0), std::conj(j.d(0)), 1e-15);
  expect_close(c.ddbar(0, 0), std::conj(j.ddbar(0, 0)), 1e-15);
}

TEST(Jet, DivisionBySmallThrows) {
  const CVec p{0.0};
  EXPECT_THROW((void)(seed(1, p, 0) / seed(1, p, 0)), Error);
  EXPECT_THROW((void)log(seed(1, p, 0)), Error);
  EXPECT_THROW((void)ipow(seed(1, p, 0), -2), Error);
}

TEST(Jet, HolomorphicHasNoMixedDerivative) {
  const CVec p{{0.3, 0.4}};
  const Jet2 j = exp(ipow(seed(1, p, 0), 2));
  expect_close(j.dbar(0), 0.0, 1e-15);
  expect_close(j.ddbar(0, 0), 0.0, 1e-15);
  expect_close(j.d(0), 2.0 * p[0] * std::exp(p[0] * p[0]), 1e-14);
}

TEST(FdJet, ModulusSquaredAtOne) {
  const PointFunction f = [](std::span<const ExtComplex> z) { return z[0] * std::conj(z[0]); };
  const CVec p{1.0};
  const Jet2 j = fd_jet(f, p, 1e-4);
  EXPECT_NEAR(j.ddbar(0, 0).real(), 1.0, 1e-6);
  EXPECT_NEAR(j.d(0).real(), 1.0, 1e-6);
}

TEST(FdJet, MatchesArithForExp) {
  const Expr e = parse("exp(z1*conj(z1))", 1);
  const CVec p{0.5};
  const Jet2 a = evaluate_jet(e, p, 1);
  const Jet2 f = fd_jet([&](std::span<const ExtComplex> z) { return evaluate_ext(e, z); }, p);
  EXPECT_LE(std::abs(a.ddbar(0, 0) - f.ddbar(0, 0)), 1e-6 * std::abs(a.ddbar(0, 0)));
  EXPECT_LE(std::abs(a.d(0) - f.d(0)), 1e-6 * std::abs(a.d(0)));
}

TEST(FdJet, MixedTwoVariables) {
  const Expr e = parse("z1*conj(z2)*exp(z2*conj(z1))", 2);
  const CVec p{{0.2, -0.1}, {0.4, 0.3}};
  const Jet2 a = evaluate_jet(e, p, 2);
  const Jet2 f = fd_jet([&](std::span<const ExtComplex> z) { return evaluate_ext(e, z); }, p);
  for (int k = 0; k < 2; ++k) {
    EXPECT_NEAR(std::abs(a.d(k) - f.d(k)), 0.0, 1e-8);
    EXPECT_NEAR(std::abs(a.dbar(k) - f.dbar(k)), 0.0, 1e-8);
    for (int l = 0; l < 2; ++l) EXPECT_NEAR(std::abs(a.ddbar(k, l) - f.ddbar(k, l)), 0.0, 1e-8);
  }
}

TEST(FdJet, RejectsNonPositiveStep) {
  const PointFunction f = [](std::span<const ExtComplex> z) { return z[0]; };
  const CVec p{0.0};
  EXPECT_THROW((void)fd_jet(f, p, 0.0), Error);
}
