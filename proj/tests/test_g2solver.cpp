#include <gtest/gtest.h>

#include <random>

#include "helpers.hpp"
#include "ncas/exprparse.hpp"
#include "ncas/g2solver.hpp"

using namespace ncas;

namespace {
NCPoly P(const std::string& s) { return parse_ncpoly(s, {.declare_parameters = true}); }

GeometricPair fam(const std::string& type, size_t k) { return catalog_sigma(type).at(k); }

bool has_extra(const RelationBasis& r, const std::string& needle) {
  for (auto& e : r.extra)
    if (e.find(needle) != std::string::npos) return true;
  return false;
}

// the branch without zero bindings
const RelationBasis& generic(const std::vector<RelationBasis>& rs) {
  for (auto& r : rs)
    if (r.assumptions.zero_log().empty()) return r;
  throw std::runtime_error("no generic branch");
}

const RelationBasis& zero_branch(const std::vector<RelationBasis>& rs, const std::string& z, size_t dim) {
  for (auto& r : rs) {
    auto& log = r.assumptions.zero_log();
    if (r.dimension == dim && log.size() == 1 && log[0].find(z) != std::string::npos) return r;
  }
  throw std::runtime_error("no branch " + z);
}
}  // namespace

TEST(G2Solver, SPrime) {
  auto rs = relations_from_pair(fam("S'", 0));
  auto& g = generic(rs);
  EXPECT_EQ(g.dimension, 2u);
  EXPECT_TRUE(same_span(g.basis, {P("x^2*y - alpha*y*x^2 + (alpha-1)*y^3"), P("x*y^2 - y^2*x")}, g.assumptions));
  auto d = relations_from_pair(fam("S'", 1));
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d[0].dimension, 2u);
  EXPECT_TRUE(same_span(d[0].basis, {P("x^3 - x*y^2 - 1/alpha*y*x*y - y^2*x"), P("y^3")}, d[0].assumptions));
}

TEST(G2Solver, TPrime1) {
  auto rs = relations_from_pair(fam("T'1", 0));
  // gamma = alpha^2 gives the table row; the graph parameter plays the role of delta
  auto& two = zero_branch(rs, "gamma = alpha^2", 2);
  EXPECT_TRUE(has_extra(two, "alpha^2 - gamma = 0"));
  EXPECT_TRUE(same_span(two.basis,
                        {P("x^2*y - alpha^2*y*x^2 + beta*y*x*y - beta*alpha*y^2*x"), P("x*y^2 - alpha^2*y^2*x")},
                        two.assumptions));
  auto& one = generic(rs);
  EXPECT_EQ(one.dimension, 1u);
  EXPECT_TRUE(has_extra(one, "alpha^2 - gamma != 0"));
  EXPECT_TRUE(same_span(one.basis, {P("x*y^2 - alpha^2*y^2*x")}, one.assumptions));

  auto ii = relations_from_pair(fam("T'1", 1));
  auto& deg = zero_branch(ii, "gamma = -alpha^2", 2);
  EXPECT_TRUE(same_span(deg.basis, {P("x^2*y + alpha^2*y*x^2 - alpha*x*y*x + beta*y*x*y"), P("y^3")},
                        deg.assumptions));
}

TEST(G2Solver, TPrime2) {
  auto rs = relations_from_pair(fam("T'2", 0));
  auto& two = zero_branch(rs, "gamma = 1", 2);
  EXPECT_TRUE(same_span(two.basis,
                        {P("x^2*y - y*x^2 + beta*y*x*y + (2-beta)*y^2*x + (beta-2)*y^3"), P("x*y^2 - y^2*x + 2*y^3")},
                        two.assumptions));
  auto ii = relations_from_pair(fam("T'2", 1));
  auto& deg = zero_branch(ii, "gamma = -1", 2);
  EXPECT_TRUE(same_span(deg.basis, {P("x^2*y + y*x^2 + beta*y*x*y - x*y*x + x*y^2 - y^2*x"), P("y^3")},
                        deg.assumptions));
}

TEST(G2Solver, Quadrangle) {
  auto i = relations_from_pair(fam("FL", 0));
  ASSERT_EQ(i.size(), 1u);
  EXPECT_TRUE(same_span(i[0].basis, {P("x^2*y - alpha*y*x^2"), P("x*y^2 - beta*y^2*x")}, i[0].assumptions));
  auto ii = relations_from_pair(fam("FL", 1));
  ASSERT_EQ(ii.size(), 1u);
  EXPECT_TRUE(same_span(ii[0].basis, {P("y*x*y - alpha*x^3"), P("beta*x*y*x - y^3")}, ii[0].assumptions));
}

TEST(G2Solver, Membership) {
  auto E = fam("S'", 0);
  EXPECT_TRUE(check_g2_membership(P("x*y^2 - y^2*x"), E));
  EXPECT_FALSE(check_g2_membership(P("x^3"), E));
  EXPECT_TRUE(check_g2_membership(NCPoly(3), E));
  EXPECT_TRUE(check_g2_membership(NCPoly(3), fam("FL", 1)));
  EXPECT_TRUE(check_g2_membership(P("x^2*y - alpha*y*x^2 + (alpha-1)*y^3"), E));
}

TEST(G2Solver, InvalidPair) {
  auto E = fam("FL", 0);
  E.sigma[0].target = 3;
  EXPECT_THROW(relations_from_pair(E), Error);
  EXPECT_THROW(check_g2_membership(P("x^3"), E), Error);
}

// every branch agrees with a parameter-free run at random points of that branch
TEST(G2Solver, SampledBindings) {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
  std::vector<Var> syms{param("alpha"), param("beta"), param("gamma")};
  for (auto t : {"S'", "T'1", "T'2", "FL"})
    for (auto& E : catalog_sigma(t))
      for (auto& br : relations_from_pair(E)) {
        int done = 0;
        for (int attempt = 0; done < 10 && attempt < 200; ++attempt) {
          std::map<Var, Scalar> b;
          for (Var v : syms)
            if (!br.assumptions.bindings().count(v)) b[v] = Scalar(mpq_class(num(rng), den(rng)));
          for (auto& [v, e] : br.assumptions.bindings()) b[v] = e.substitute(b);
          bool ok = true;
          for (auto& f : br.assumptions.nonzero()) ok = ok && !Scalar(f).substitute(b).is_zero();
          if (!ok) continue;
          Assumptions num_ctx;
          for (auto& [v, e] : b) num_ctx = *num_ctx.with_binding(v, e);
          auto rs = relations_from_pair(specialize(E, num_ctx));
          ASSERT_EQ(rs.size(), 1u) << E.tag;
          std::vector<NCPoly> expect;
          for (auto& f : br.basis) expect.push_back(f.map_coefficients([&](const Scalar& s) { return s.substitute(b); }));
          EXPECT_EQ(rs[0].dimension, br.dimension) << E.tag;
          EXPECT_TRUE(same_span(rs[0].basis, expect)) << E.tag;
          ++done;
        }
        EXPECT_EQ(done, 10) << E.tag;
      }
}
