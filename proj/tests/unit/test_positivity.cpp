#include <gtest/gtest.h>

#include "hsclab/positivity.hpp"

using namespace hsclab;

namespace {

ScanParams small_scan(std::uint64_t seed = 0) {
  ScanParams p;
  p.grid_per_axis = 3;
  p.random_points = 8;
  p.seed = seed;
  return p;
}

}  // namespace

TEST(Positivity, FubiniStudyScan) {
  const ScanReport r = scan_chart(catalog("fs_affine"), small_scan());
  EXPECT_NEAR(r.min_hsc, 4.0, 1e-6);
  EXPECT_LT(r.max_hsc - r.min_hsc, 1e-6);
  EXPECT_EQ(r.verdict(), "positive");
}

TEST(Positivity, PoincareScan) {
  const ScanReport r = scan_chart(catalog("poincare"), small_scan());
  EXPECT_NEAR(r.min_hsc, -4.0, 1e-6);
  EXPECT_LT(r.max_hsc - r.min_hsc, 1e-6);
}

TEST(Positivity, DirectionalMatchesHsc) {
  const MetricSpec m = catalog("warp_demo(10)");
  const CVec p{{0.1, 0.2}, {-0.3, 0.1}};
  const MetricJet mj = metric_jet(m, p);
  const CurvatureTensor R = curvature(mj);
  const DirectionalHsc f(mj, R);
  const CVec u{{0.6, 0.0}, {0.0, 0.8}};
  EXPECT_NEAR(f.value(u), hsc(mj, R, f.direction(u)), 1e-12);
  EXPECT_NEAR(gnorm2(mj.g, f.direction(u)), 1.0, 1e-12);
}

TEST(Positivity, MoreDirectionsNeverRaiseMinimum) {
  const MetricSpec m = catalog("paper_G(1)");
  const CVec p{{0.5, 0.1}, {0.2, 0.0}};
  DirectionSearch few;
  few.dirs = 8;
  few.starts = 2;
  DirectionSearch many = few;
  many.dirs = 64;
  many.starts = 8;
  EXPECT_LE(min_hsc_at_point(m, p, many, 4).value, min_hsc_at_point(m, p, few, 4).value);
}

TEST(Positivity, ScanIsDeterministicAcrossThreads) {
  const MetricSpec m = catalog("warp_demo(1)");
  ScanParams a = small_scan(9);
  a.threads = 1;
  ScanParams b = a;
  b.threads = 3;
  const ScanReport ra = scan_chart(m, a);
  const ScanReport rb = scan_chart(m, b);
  EXPECT_EQ(ra.min_hsc, rb.min_hsc);
  EXPECT_EQ(ra.witness_point, rb.witness_point);
  EXPECT_EQ(ra.witness_dir, rb.witness_dir);
  ASSERT_EQ(ra.samples.size(), rb.samples.size());
  for (std::size_t k = 0; k < ra.samples.size(); ++k) EXPECT_EQ(ra.samples[k].min_hsc, rb.samples[k].min_hsc);
}

TEST(Positivity, ScanPointsIncludeGridAndRandom) {
  const ChartBox box = ChartBox::polydisk(1);
  const auto pts = scan_points(box, 3, 5, 1);
  EXPECT_GE(pts.size(), 5u + 3u);
  for (const CVec& p : pts) EXPECT_TRUE(box.contains(p));
}

TEST(Positivity, WitnessForPaperG) {
  const MetricSpec m = catalog("paper_G(5)");
  const auto w = find_negative_witness(m, m.box, 16, 0);
  ASSERT_TRUE(w.has_value());
  EXPECT_LT(w->value, 0.0);
  EXPECT_NEAR(hsc_at(m, w->point, w->dir), w->value, 1e-12);
  EXPECT_TRUE(m.box.contains(w->point));
}

TEST(Positivity, NoWitnessOnPositiveMetric) {
  const MetricSpec m = catalog("fs_affine");
  EXPECT_FALSE(find_negative_witness(m, m.box, 8, 0).has_value());
}
