#include <gtest/gtest.h>

#include <cmath>

#include "hsclab/error.hpp"
#include "hsclab/lemma.hpp"
#include "hsclab/random.hpp"

using namespace hsclab;

TEST(Lemma1, KcalOracle) {
  const Lemma1Constants c = lemma1_constants(8.0, 1.0, 2, 1);
  EXPECT_DOUBLE_EQ(c.a * c.a, 0.25);
  EXPECT_DOUBLE_EQ(c.b * c.b, 1.0 / 6.0);
  EXPECT_DOUBLE_EQ(c.c * c.c, 0.25);
  EXPECT_DOUBLE_EQ(c.d * c.d, 1.0 / 16.0);
  EXPECT_EQ(c.Kcal, 312.0);
  EXPECT_EQ(c.K2_required, 312.0);
  EXPECT_NEAR(c.constraint_sum(), 4.0, 1e-14);
  for (double t : c.constraint_terms()) EXPECT_NEAR(t, 1.0, 1e-15);
}

TEST(Lemma1, EqualizationInvariants) {
  Rng rng(2);
  for (int t = 0; t < 20; ++t) {
    const double K0 = std::exp(uniform(rng, -3, 3));
    const double K1 = std::exp(uniform(rng, -3, 3));
    const int n = 2 + static_cast<int>(rng() % 5);
    const int s = 1 + static_cast<int>(rng() % static_cast<unsigned>(n - 1));
    const Lemma1Constants c = lemma1_constants(K0, K1, n, s);
    const double target = K0 / (8 * K1);
    for (double term : c.constraint_terms()) EXPECT_NEAR(term, target, 1e-14 * target);
    EXPECT_NEAR(c.constraint_sum(), K0 / (2 * K1), 1e-14 * K0 / K1);
    EXPECT_NEAR(c.kcal_formula(), c.Kcal, 1e-14 * c.Kcal);
    const double scale = std::exp(uniform(rng, -5, 5));
    const Lemma1Constants sc = lemma1_constants(scale * K0, scale * K1, n, s);
    EXPECT_NEAR(sc.Kcal, c.Kcal, 4 * std::numeric_limits<double>::epsilon() * c.Kcal);
  }
}

TEST(Lemma1, RejectsBadArguments) {
  EXPECT_THROW((void)lemma1_constants(-1, 1, 2, 1), Error);
  EXPECT_THROW((void)lemma1_constants(1, 1, 2, 2), Error);
  EXPECT_THROW((void)lemma1_constants(1, 1, 2, 0), Error);
}

TEST(Lemma1, InequalitySlacksAtOnes) {
  const auto s = prod_ineq_slacks(1, 1, 1, 1, {1, 1, 1, 1});
  EXPECT_DOUBLE_EQ(s[0], 2.0);
  EXPECT_DOUBLE_EQ(s[1], 1.0);
  EXPECT_DOUBLE_EQ(s[2], 2.0);
}

TEST(Lemma1, InequalitiesHold) {
  const Lemma1Constants c = lemma1_constants(8.0, 1.0, 2, 1);
  const IneqReport r = prod_ineq_check(c.a, c.b, c.c, c.d, 20000, 7);
  EXPECT_TRUE(r.ok());
}

TEST(Lemma1, GeneratedTensorSatisfiesHypotheses) {
  const Lemma1Constants c = lemma1_constants(8.0, 1.0, 3, 1);
  const HypothesisTensor t = random_hypothesis_tensor(8.0, 1.0, c.K2_required, 3, 1, 5);
  EXPECT_LE(t.R.pair_symmetry_defect(), 0.0);
  const HypothesisReport h = check_hypotheses(t, 2000, 6);
  EXPECT_TRUE(h.ok());
  EXPECT_LE(h.max_mixed, 1.0);
  const BoundReport b = lemma1_bound_check(t, c, 2000, 8);
  EXPECT_TRUE(b.ok());
}

TEST(Lemma1, BoundRequiresK2) {
  const Lemma1Constants c = lemma1_constants(8.0, 1.0, 2, 1);
  const HypothesisTensor t = random_hypothesis_tensor(8.0, 1.0, 100.0, 2, 1, 5);
  try {
    (void)lemma1_bound_check(t, c, 10, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::HypothesisViolation);
  }
}

TEST(Lemma1, LargeMixedEntriesBreakHypothesisTwo) {
  HypothesisTensor t = random_hypothesis_tensor(8.0, 1.0, 312.0, 2, 1, 5);
  // Mixed entries reach up to 0.9 in modulus; claim a smaller bound.
  t.K1 = 0.1;
  EXPECT_FALSE(check_hypotheses(t, 100, 1).hyp2);
}

// At 0 all first derivatives vanish and g = h = 1, so K = -2 (g_zz + lambda h_zz) / (1+lambda)^2
// with g_zz = 2 (poincare), 0 (flat), -2 (fs_affine).
TEST(Lemma2, ClosedFormsAtOrigin) {
  const CVec o{0.0};
  const Lemma2Inputs pf = lemma2_inputs(catalog("poincare"), catalog("fs_affine"), o);
  const Lemma2Inputs ff = lemma2_inputs(catalog("flat(1)"), catalog("fs_affine"), o);
  const Lemma2Inputs pl = lemma2_inputs(catalog("poincare"), catalog("flat(1)"), o);
  for (double lam : {0.1, 0.5, 1.0, 3.0, 100.0}) {
    EXPECT_NEAR(ff.at(lam), 4 * lam / ((1 + lam) * (1 + lam)), 1e-12);
    EXPECT_NEAR(pl.at(lam), -4 / ((1 + lam) * (1 + lam)), 1e-12);
    EXPECT_NEAR(pf.at(lam), (4 * lam - 4) / ((1 + lam) * (1 + lam)), 1e-12);
  }
}

TEST(Lemma2, FormulaMatchesDirect) {
  const MetricSpec g = catalog("poincare");
  const MetricSpec h = catalog("paper_base");
  const CVec p{{0.3, -0.4}};
  const Lemma2Inputs in = lemma2_inputs(g, h, p);
  for (double lam : {0.01, 0.7, 5.0, 1e3}) {
    EXPECT_NEAR(in.at(lam), hsc_at(summed_metric(g, h, lam), p, CVec{1.0}), 1e-9);
  }
}

TEST(Lemma2, ThresholdPoincareFsIsOne) {
  const ThresholdResult r = lemma2_threshold(catalog("poincare"), catalog("fs_affine"), CVec{0.0}, 1e6);
  EXPECT_NEAR(r.lambda_t, 1.0, 1e-6);
  EXPECT_TRUE(r.persistent);
}

TEST(Lemma2, ThresholdFlatFsIsTiny) {
  const ThresholdResult r = lemma2_threshold(catalog("flat(1)"), catalog("fs_affine"), CVec{0.0}, 1e6);
  EXPECT_LE(r.lambda_t, 1e-6);
}

TEST(Lemma2, ThresholdErrors) {
  try {
    (void)lemma2_threshold(catalog("fs_affine"), catalog("poincare"), CVec{0.0}, 1e6);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::HypothesisViolation);
  }
  // Threshold 1 is past a limit of 0.5.
  try {
    (void)lemma2_threshold(catalog("poincare"), catalog("fs_affine"), CVec{0.0}, 0.5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotReached);
  }
}

TEST(Lemma2, Decay) {
  const std::vector<double> lams{10, 100, 1000, 10000};
  const DecayReport r = decay_check(catalog("poincare"), catalog("fs_affine"), CVec{0.0}, lams);
  EXPECT_TRUE(r.ok);
  EXPECT_NEAR(r.KH, 4.0, 1e-12);
  EXPECT_LT(r.limit_rel_error, 0.01);
  EXPECT_NEAR(r.tail_slope, -1.0, 0.2);
  const std::vector<double> short_list{10, 100};
  EXPECT_THROW((void)decay_check(catalog("poincare"), catalog("fs_affine"), CVec{0.0}, short_list), Error);
}

TEST(Lemma2, LogLogSlope) {
  std::vector<std::pair<double, double>> xy;
  for (double x : {1.0, 10.0, 100.0}) xy.emplace_back(x, 3.0 / (x * x));
  EXPECT_NEAR(loglog_slope(xy), -2.0, 1e-12);
}
