#include <gtest/gtest.h>

#include "hsclab/error.hpp"
#include "hsclab/expr.hpp"

using namespace hsclab;

TEST(Expr, EvaluatesArithmetic) {
  const Expr e = parse("2 + 3*z1 - z2/2", 2);
  const CVec p{{1.0, 1.0}, {4.0, 0.0}};
  const cplx v = evaluate(e, p);
  EXPECT_DOUBLE_EQ(v.real(), 3.0);
  EXPECT_DOUBLE_EQ(v.imag(), 3.0);
}

TEST(Expr, ImaginaryUnitAndConj) {
  const Expr e = parse("i*conj(z1)", 1);
  const CVec p{{0.0, 2.0}};
  const cplx v = evaluate(e, p);
  EXPECT_DOUBLE_EQ(v.real(), 2.0);
  EXPECT_DOUBLE_EQ(v.imag(), 0.0);
}

TEST(Expr, IntegerAndDecimalLiterals) {
  const CVec p{0.0};
  EXPECT_DOUBLE_EQ(evaluate(parse("1", 1), p).real(), 1.0);
  EXPECT_DOUBLE_EQ(evaluate(parse("1.0", 1), p).real(), 1.0);
  EXPECT_DOUBLE_EQ(evaluate(parse("2.5e-1", 1), p).real(), 0.25);
}

TEST(Expr, NegativePower) {
  const CVec p{0.5};
  EXPECT_NEAR(evaluate(parse("(1-z1*conj(z1))^-2", 1), p).real(), 1.0 / (0.75 * 0.75), 1e-15);
}

TEST(Expr, PrintParseRoundTrip) {
  const char* sources[] = {
      "(1-z1*conj(z1))^-2",
      "exp(2*z2*conj(z2))/(1+(z1*conj(z1))^2*exp(4*z2*conj(z2)))",
      "0.5+0.25*i",
      "-z1 + exp(2 + z2*conj(z2))^-1",
  };
  const CVec p{{0.3, -0.2}, {0.1, 0.4}};
  for (const char* s : sources) {
    const Expr e = parse(s, 2);
    const std::string printed = to_string(e);
    const Expr again = parse(printed, 2);
    EXPECT_EQ(to_string(again), printed) << s;
    EXPECT_EQ(evaluate(again, p), evaluate(e, p)) << s;
  }
}

TEST(Expr, Errors) {
  EXPECT_THROW((void)parse("1 +", 1), ParseError);
  EXPECT_THROW((void)parse("foo(z1)", 1), Error);
  EXPECT_THROW((void)parse("z3", 2), Error);
  EXPECT_THROW((void)parse("z0", 2), Error);
  try {
    (void)parse("1 + * 2", 1);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.code(), ErrorCode::Syntax);
  }
}

TEST(Expr, SubstituteAndReferences) {
  const Expr e = parse("z1*conj(z2)", 2);
  EXPECT_TRUE(references(e, 1));
  EXPECT_EQ(max_variable(e), 1);
  // Fix z2 = 2 and rename z1 -> z1.
  const std::vector<int> renumber{0, -1};
  const Expr s = substitute(e, {{1, cplx(2.0)}}, renumber);
  EXPECT_FALSE(references(s, 1));
  const CVec p{{0.0, 1.0}};
  EXPECT_EQ(evaluate(s, p), cplx(0.0, 2.0));
}

TEST(Expr, FormatRealShortest) {
  EXPECT_EQ(format_real(0.1), "0.1");
  EXPECT_EQ(format_real(2.0), "2");
}
