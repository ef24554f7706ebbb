#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>

#include "hsclab/error.hpp"
#include "hsclab/metric.hpp"

using namespace hsclab;

TEST(Metric, CatalogNamesResolve) {
  for (const auto& name : catalog_names()) {
    const MetricSpec m = catalog(name);
    EXPECT_GT(m.dim(), 0) << name;
    EXPECT_EQ(m.box.size(), m.n) << name;
  }
  EXPECT_THROW((void)catalog("nope"), Error);
}

TEST(Metric, EvaluatePoincare) {
  const MetricSpec m = catalog("poincare");
  const CVec p{{0.3, 0.1}};
  const Matrix g = evaluate_matrix(m, p);
  EXPECT_NEAR(g(0, 0).real(), 1.0 / (0.9 * 0.9), 1e-14);
  EXPECT_EQ(g(0, 0).imag(), 0.0);
}

TEST(Metric, PaperGMatchesFormula) {
  const MetricSpec m = catalog("paper_G(2)");
  ASSERT_EQ(m.n, 2);
  const CVec p{{0.2, 0.1}, {-0.3, 0.2}};
  const Matrix g = evaluate_matrix(m, p);
  const double r1 = std::norm(p[0]);
  const double r2 = std::norm(p[1]);
  EXPECT_NEAR(g(0, 0).real(), std::exp(2 * r2) / (1 + r1 * r1 * std::exp(4 * r2)), 1e-14);
  EXPECT_NEAR(g(1, 1).real(), 2.0 / (1 + r2), 1e-14);
  EXPECT_EQ(std::abs(g(0, 1)), 0.0);
}

TEST(Metric, ValidateRejectsIndefinite) {
  const MetricSpec bad = make_metric("bad", 1, {{"1 - 2*z1*conj(z1)"}}, ChartBox::polydisk(1));
  EXPECT_THROW((void)validate(bad, 64, 1), WitnessError);
  try {
    (void)validate(bad, 64, 1);
  } catch (const WitnessError& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotPositiveDefinite);
    EXPECT_EQ(e.point().size(), 1u);
  }
}

TEST(Metric, ValidateRejectsNonHermitian) {
  const MetricSpec bad = make_metric("nh", 2, {{"2", "z1"}, {"z1", "2"}}, ChartBox::polydisk(2));
  try {
    (void)validate(bad, 32, 3);
    FAIL();
  } catch (const WitnessError& e) {
    EXPECT_EQ(e.code(), ErrorCode::HermitianDefect);
  }
}

TEST(Metric, ValidateAcceptsCatalog) {
  for (const auto& name : catalog_names()) {
    const ValidationReport r = validate(catalog(name), 32, 5);
    EXPECT_GT(r.min_eigenvalue, 0.0) << name;
  }
}

TEST(Metric, ShapeErrors) {
  EXPECT_THROW((void)make_metric("x", 1, {{"1", "0"}}, ChartBox::polydisk(1)), Error);
  EXPECT_THROW((void)make_metric("x", 1, {{"z2"}}, ChartBox::polydisk(1)), Error);
}

TEST(Metric, JsonRoundTrip) {
  const MetricSpec m = catalog("paper_G(1)");
  const std::string text = metric_to_json(m);
  const MetricSpec back = metric_from_json(text);
  EXPECT_EQ(back.name, m.name);
  EXPECT_EQ(back.n, m.n);
  EXPECT_EQ(metric_to_json(back), text);
  const CVec p{{0.1, 0.2}, {0.3, -0.1}};
  const Matrix a = evaluate_matrix(m, p);
  const Matrix b = evaluate_matrix(back, p);
  EXPECT_LE((a - b).norm(), 1e-15);
}

TEST(Metric, JsonFileAndErrors) {
  const std::string path = ::testing::TempDir() + "hsclab_metric.json";
  {
    std::ofstream out(path);
    out << R"({"name":"d","n":1,"entries":[["1"]],"box":[{"re":[-1,1],"im":[-1,1]}]})";
  }
  const MetricSpec m = load_metric_file(path);
  EXPECT_EQ(m.name, "d");
  std::remove(path.c_str());
  EXPECT_THROW((void)load_metric_file(path), Error);
  EXPECT_THROW((void)metric_from_json("{"), Error);
  EXPECT_THROW((void)metric_from_json(R"({"name":"x","n":1})"), Error);
}

TEST(Metric, BoxGeometry) {
  const ChartBox box = ChartBox::polydisk(2, 0.5);
  const CVec inside{{0.3, 0.3}, {0.0, -0.4}};
  const CVec outside{{0.4, 0.4}, {0.0, 0.0}};
  EXPECT_TRUE(box.contains(inside));
  EXPECT_FALSE(box.contains(outside));
  Rng rng(3);
  for (int k = 0; k < 100; ++k) EXPECT_TRUE(box.contains(box.sample(rng)));
  const CVec c = box.center();
  EXPECT_EQ(c[0], cplx(0.0));
}
