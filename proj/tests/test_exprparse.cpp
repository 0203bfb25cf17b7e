#include <gtest/gtest.h>

#include "helpers.hpp"
#include "ncas/exprparse.hpp"

using namespace ncas;
using namespace testing_helpers;

namespace {
ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind(-1);
}
}  // namespace

TEST(ExprParse, Basics) {
  Scalar a = Scalar::param("a");
  NCPoly g = parse_ncpoly("x^2*y - a*y*x^2 + (a-1)*y^3");
  NCPoly want(3);
  want.add("xxy", Scalar(1));
  want.add("yxx", -a);
  want.add("yyy", a - 1);
  EXPECT_EQ(g, want);
  NCPoly c(2);
  c.add("xy", Scalar(1));
  c.add("yx", Scalar(-1));
  EXPECT_EQ(parse_ncpoly("x*y - y*x"), c);
  EXPECT_EQ(parse_ncpoly("y*(a*x)"), a * NCPoly::word("yx"));
  EXPECT_EQ(parse_ncpoly("x*y/2"), Scalar::rational(1, 2) * NCPoly::word("xy"));
  EXPECT_EQ(parse_ncpoly("(a+1)^2*x"), (a + 1) * (a + 1) * gen_x());
  EXPECT_EQ(parse_ncpoly("-x^2"), -NCPoly::word("xx"));
  EXPECT_EQ(parse_ncpoly("x - x", {}, 1), NCPoly(1));
}

TEST(ExprParse, Errors) {
  EXPECT_EQ(kind_of([] { parse_ncpoly("x^2 + y^3"); }), ErrorKind::MixedDegree);
  EXPECT_EQ(kind_of([] { parse_ncpoly("x*y + zeta_undeclared*x*x"); }), ErrorKind::UnknownSymbol);
  EXPECT_EQ(kind_of([] { parse_ncpoly("x y"); }), ErrorKind::SyntaxError);
  EXPECT_EQ(kind_of([] { parse_ncpoly("(x*y)^2"); }), ErrorKind::SyntaxError);
  EXPECT_EQ(kind_of([] { parse_ncpoly("x*"); }), ErrorKind::SyntaxError);
  EXPECT_EQ(kind_of([] { parse_ncpoly("x/y"); }), ErrorKind::SyntaxError);
  EXPECT_EQ(kind_of([] { parse_matrix("[[x,0],[0,1]]"); }), ErrorKind::NonScalarEntry);
  EXPECT_EQ(kind_of([] { parse_matrix("[[1,0],[0,1]"); }), ErrorKind::SyntaxError);
  try {
    parse_ncpoly("x*y + ) ");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 6u);
  }
}

TEST(ExprParse, Matrices) {
  Scalar a = Scalar::param("a");
  EXPECT_EQ(parse_matrix("[[1,0],[0,a]]"), LinearMap2::diag(Scalar(1), a));
  EXPECT_EQ(parse_matrix("[[0,1],[1,0]]"), LinearMap2(0, 1, 1, 0));
  EXPECT_EQ(parse_matrix(" [ [1, 1], [0, 1] ] "), LinearMap2(1, 1, 0, 1));
  EXPECT_EQ(parse_matrix("[[1/2,-a],[a^2,3]]"), LinearMap2(Scalar::rational(1, 2), -a, a * a, 3));
}

TEST(ExprParse, RoundTripRandom) {
  std::mt19937 rng(11);
  std::vector<Scalar> ps{Scalar::param("alpha"), Scalar::param("beta")};
  for (int i = 0; i < 500; ++i) {
    unsigned d = rng() % 5;
    NCPoly w = random_ncpoly(rng, d, ps, 1 + int(rng() % 5));
    // rational and compound coefficients too
    if (i % 3 == 0 && !w.is_zero()) w = (ps[0] + 1) / (ps[1] - 2) * w;
    if (i % 5 == 0 && !w.is_zero()) w = Scalar::rational(-3, 7) * w;
    std::string s = w.to_string();
    ASSERT_EQ(parse_ncpoly(s, {}, int(d)), w) << s;
  }
}
