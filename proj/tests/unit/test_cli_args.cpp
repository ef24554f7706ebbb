#include <gtest/gtest.h>

#include "args.hpp"
#include "hsclab/error.hpp"

using namespace hsclab;
using namespace hsclab::cli;

TEST(CliArgs, Complex) {
  EXPECT_EQ(parse_complex("0.5"), cplx(0.5, 0.0));
  EXPECT_EQ(parse_complex("0.5:-1"), cplx(0.5, -1.0));
  EXPECT_EQ(parse_complex("1+2i"), cplx(1.0, 2.0));
  EXPECT_EQ(parse_complex("-2i"), cplx(0.0, -2.0));
  EXPECT_EQ(parse_complex("i"), cplx(0.0, 1.0));
  EXPECT_THROW((void)parse_complex("abc"), Error);
}

TEST(CliArgs, Point) {
  EXPECT_EQ(parse_point("0.1:0.2,0.3", 2), (CVec{{0.1, 0.2}, {0.3, 0.0}}));
  // 2n plain numbers are re,im pairs.
  EXPECT_EQ(parse_point("0.1,0.2,0.3,0.4", 2), (CVec{{0.1, 0.2}, {0.3, 0.4}}));
  EXPECT_EQ(parse_point("0.1,0.2", 2), (CVec{{0.1, 0.0}, {0.2, 0.0}}));
  EXPECT_THROW((void)parse_point("0.1,0.2,0.3", 2), Error);
}

TEST(CliArgs, Lists) {
  EXPECT_EQ(parse_list("1,2.5,3"), (std::vector<double>{1, 2.5, 3}));
  const auto g = parse_list("geom:1:100:3");
  ASSERT_EQ(g.size(), 3u);
  EXPECT_DOUBLE_EQ(g[0], 1.0);
  EXPECT_NEAR(g[1], 10.0, 1e-12);
  EXPECT_DOUBLE_EQ(g[2], 100.0);
  EXPECT_THROW((void)parse_list("geom:1:100"), Error);
}

TEST(CliArgs, Box) {
  const ChartBox a = parse_box("disk:0.5", 2);
  EXPECT_EQ(a.size(), 2);
  EXPECT_EQ(a.coords[1].radius.value(), 0.5);
  const ChartBox b = parse_box("rect:-1:1:0:2;disk:0.3", 2);
  EXPECT_EQ(b.coords[0].im_max, 2.0);
  EXPECT_FALSE(b.coords[0].radius.has_value());
  EXPECT_THROW((void)parse_box("disk:1;disk:1;disk:1", 2), Error);
}

TEST(CliArgs, Resolve) {
  EXPECT_EQ(resolve_metric("poincare", "").name, "poincare");
  EXPECT_THROW((void)resolve_metric("", ""), Error);
  EXPECT_THROW((void)resolve_metric("poincare", "x.json"), Error);
  EXPECT_EQ(resolve_fibration("coupled", "").s, 2);
  EXPECT_THROW((void)resolve_fibration("nope", ""), Error);
}
