#include <gtest/gtest.h>

#include "helpers.hpp"
#include "ncas/exprparse.hpp"
#include "ncas/superpot.hpp"

using namespace ncas;
using namespace testing_helpers;

namespace {
NCPoly P(const std::string& s, int deg = -1) { return parse_ncpoly(s, {.declare_parameters = true}, deg); }
Scalar S(const char* n) { return Scalar::param(n); }

NCPoly sprime_potential() { return P("x^2*y^2 + y*x^2*y - x*y^2*x + y^2*x^2 - 2*y^4"); }
NCPoly fl2_potential() { return P("-alpha*beta*x^4 + beta*x*y*x*y + beta*y*x*y*x - y^4"); }
NCPoly t1_potential() {
  return P("x^2*y^2 - y*x^2*y - x*y^2*x + y^2*x^2 - alpha*y^2*x*y + alpha*y*x*y^2");
}

bool verifies(const NCPoly& w, const LinearMap2& theta, const Assumptions& ctx = {}) {
  NCPoly t = slot_map(rotate(w), {theta, LinearMap2(), LinearMap2(), LinearMap2()});
  return (t - w).reduce(ctx).is_zero();
}
}  // namespace

TEST(Superpot, IsSuperpotential) {
  EXPECT_TRUE(is_superpotential(omega_B()));
  EXPECT_TRUE(is_superpotential(P("x^4")));
  EXPECT_FALSE(is_superpotential(P("x^3*y")));
  EXPECT_THROW(is_superpotential(P("x^3")), Error);
  EXPECT_THROW(is_superpotential(NCPoly(4)), Error);
}

TEST(Superpot, TwistingMatrix) {
  auto t = twisting_matrix(omega_B());
  ASSERT_TRUE(t);
  EXPECT_TRUE(verifies(omega_B(), *t));
  auto s = twisting_matrix(sprime_potential());
  ASSERT_TRUE(s);
  EXPECT_TRUE(verifies(sprime_potential(), *s));
  EXPECT_FALSE(twisting_matrix(P("x^3*y")));
  auto ctx = *Assumptions().with_nonzero(S("alpha") * S("beta"));
  auto f = twisting_matrix(fl2_potential(), ctx);
  ASSERT_TRUE(f);
  EXPECT_TRUE(verifies(fl2_potential(), *f, ctx));
}

TEST(Superpot, MsTwistRows) {
  Scalar a = S("alpha");
  EXPECT_EQ(ms_twist(omega_B(), LinearMap2()), omega_B());
  auto nz = *Assumptions().with_nonzero(a);
  auto [g1, g2] = derivation_quotient(ms_twist(omega_B(), LinearMap2::diag(1, a)));
  EXPECT_TRUE(same_span({g1, g2}, {P("alpha^2*x*y^2 + y^2*x - 2*alpha*y*x*y"),
                                   P("alpha^2*x^2*y + y*x^2 - 2*alpha*x*y*x")}, nz));
  // the unipotent row comes from the inverse of (1 1; 0 1) under the contragredient action
  auto [h1, h2] = derivation_quotient(ms_twist(omega_B(), LinearMap2(1, -1, 0, 1)));
  EXPECT_TRUE(same_span({h1, h2}, {P("x*y^2 + y^2*x - 2*y*x*y"),
                                   P("x^2*y + y*x^2 - 2*x*y*x + 4*x*y^2 - 4*y*x*y + 2*y^3")}));
  EXPECT_THROW(ms_twist(omega_B(), LinearMap2(1, 1, 1, 1)), Error);
}

TEST(Superpot, AutMembership) {
  Scalar a = S("a"), b = S("b"), c = S("c"), d = S("d");
  auto ctx = *Assumptions().with_nonzero(a * d - b * c);
  auto l = aut_membership(omega_B(), LinearMap2(a, b, c, d), ctx);
  ASSERT_TRUE(l);
  EXPECT_EQ(*l, (a * d - b * c).pow(-2));
  EXPECT_EQ(aut_membership(P("x^4"), LinearMap2::diag(1, S("delta")), *Assumptions().with_nonzero(S("delta"))),
            Scalar(1));
  EXPECT_FALSE(aut_membership(P("x^3*y"), LinearMap2(0, 1, 1, 0)));
}

TEST(Superpot, DerivationQuotientAndM) {
  auto [g1, g2] = derivation_quotient(omega_B());
  EXPECT_EQ(g1, P("x*y^2 + y^2*x - 2*y*x*y"));
  EXPECT_EQ(g2, P("x^2*y + y*x^2 - 2*x*y*x"));
  auto [f1, f2] = derivation_quotient(fl2_potential());
  auto ctx = *Assumptions().with_nonzero(S("alpha") * S("beta"));
  EXPECT_TRUE(same_span({f1, f2}, {P("y*x*y - alpha*x^3"), P("beta*x*y*x - y^3")}, ctx));
  auto [q1, q2] = derivation_quotient(P("x^4"));
  EXPECT_EQ(q1, P("x^3"));
  EXPECT_TRUE(q2.is_zero());

  NCMatrix2 m = m_matrix(sprime_potential());
  EXPECT_EQ(m[0][0], P("-y^2"));
  EXPECT_EQ(m[0][1], P("x*y"));
  EXPECT_EQ(m[1][0], P("y*x"));
  EXPECT_EQ(m[1][1], P("x^2 - 2*y^2"));
  NCMatrix2 f = m_matrix(fl2_potential());
  EXPECT_EQ(f[0][0], P("-alpha*beta*x^2"));
  EXPECT_EQ(f[0][1], P("beta*y*x"));
  EXPECT_EQ(f[1][0], P("beta*x*y"));
  EXPECT_EQ(f[1][1], P("-y^2"));
  NCMatrix2 x4 = m_matrix(P("x^4"));
  EXPECT_EQ(x4[0][0], P("x^2"));
  EXPECT_TRUE(x4[0][1].is_zero() && x4[1][0].is_zero() && x4[1][1].is_zero());
}

TEST(Superpot, Standardness) {
  EXPECT_TRUE(is_standard(omega_B()));
  try {
    is_standard(P("x^4 + x^3*y"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotTwistedSuperpotential);
  }
  // (x + 2y)^4: d_y = 2 d_x
  NCPoly u = P("x + 2*y"), u4 = u * u * u * u;
  EXPECT_FALSE(is_standard(u4));
  try {
    recover_Q(u4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotStandard);
  }
}

TEST(Superpot, RecoverQ) {
  auto check = [](const NCPoly& w, const Assumptions& ctx) {
    LinearMap2 Q = recover_Q(w, ctx);
    NCMatrix2 M = m_matrix(w);
    auto [g1, g2] = derivation_quotient(w);
    for (int j = 0; j < 2; ++j) {
      NCPoly lhs = gen_x() * M[0][size_t(j)] + gen_y() * M[1][size_t(j)];
      NCPoly rhs = Q(j, 0) * g1 + Q(j, 1) * g2;
      if (!(lhs - rhs).reduce(ctx).is_zero()) return false;
    }
    return !ctx.is_zero(Q.det());
  };
  EXPECT_TRUE(check(omega_B(), {}));
  EXPECT_TRUE(check(t1_potential(), *Assumptions().with_nonzero(S("alpha"))));
}

TEST(Superpot, PotentialFromRelationsSPrime) {
  Scalar a = S("alpha");
  auto sols = potential_from_relations(P("x^2*y - alpha*y*x^2 + (alpha-1)*y^3"), P("x*y^2 - y^2*x"));
  ASSERT_EQ(sols.size(), 2u);
  std::set<std::string> alphas;
  for (auto& s : sols) {
    Scalar v = s.assumptions.reduce(a);
    ASSERT_TRUE(v.is_constant());
    alphas.insert(v.to_string());
    if (v == Scalar(1)) EXPECT_TRUE(proportional(s.omega, P("x^2*y^2 - x*y^2*x - y*x^2*y + y^2*x^2")));
    if (v == Scalar(-1)) EXPECT_TRUE(proportional(s.omega, sprime_potential()));
  }
  EXPECT_EQ(alphas, (std::set<std::string>{"-1", "1"}));
}

TEST(Superpot, PotentialFromRelationsOther) {
  auto ctx = *Assumptions().with_nonzero(S("alpha") * S("beta") * (S("alpha") - S("beta")));
  auto sols = potential_from_relations(P("y*x*y - alpha*x^3"), P("beta*x*y*x - y^3"), ctx);
  ASSERT_EQ(sols.size(), 1u);
  EXPECT_TRUE(proportional(sols[0].omega, fl2_potential(), sols[0].assumptions));
  auto cubes = potential_from_relations(P("x^3"), P("y^3"));
  ASSERT_EQ(cubes.size(), 1u);
  // any a x^4 + d y^4 with ad != 0 qualifies
  NCPoly w = cubes[0].omega;
  EXPECT_EQ(w.terms().size(), 2u);
  EXPECT_FALSE(w.coeff("xxxx").is_zero());
  EXPECT_FALSE(w.coeff("yyyy").is_zero());
  auto [c1, c2] = derivation_quotient(w);
  EXPECT_TRUE(same_span({c1, c2}, {P("x^3"), P("y^3")}));
  EXPECT_TRUE(twisting_matrix(w));
  try {
    potential_from_relations(P("x^3"), P("2*x^3"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DependentRelations);
  }
  try {
    potential_from_relations(P("x^2*y"), P("y^3"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NoPotential);
  }
}

TEST(Superpot, MsTwistClosureRandom) {
  std::mt19937 rng(5);
  std::vector<NCPoly> family{omega_B(), sprime_potential(), P("x^4 + y^4"), P("x^2*y^2 - x*y^2*x - y*x^2*y + y^2*x^2")};
  std::vector<LinearMap2> auts{LinearMap2(), LinearMap2(0, 1, 1, 0), LinearMap2::diag(1, -1),
                               LinearMap2(2, 1, 1, 3), LinearMap2::diag(3, -3), LinearMap2(1, 1, 0, 1)};
  int done = 0;
  for (int i = 0; done < 50 && i < 2000; ++i) {
    NCPoly w = family[rng() % family.size()];
    LinearMap2 th = auts[rng() % auts.size()];
    if (rng() % 2) th = th.scaled(Scalar(long(rng() % 5) + 1));
    if (!aut_membership(w, th)) continue;
    ASSERT_TRUE(twisting_matrix(ms_twist(w, th))) << w.to_string() << " " << th.to_string();
    ++done;
  }
  EXPECT_EQ(done, 50);
}

TEST(Superpot, ConjugationIdentityRandom) {
  std::mt19937 rng(6);
  for (int i = 0; i < 60; ++i) {
    LinearMap2 phi = random_invertible(rng), psi = random_invertible(rng);
    NCPoly lhs = slot_map(ms_twist(omega_B(), psi.inverse() * phi * psi), {psi, psi, psi, psi});
    ASSERT_TRUE(proportional(lhs, ms_twist(omega_B(), phi)));
  }
}

TEST(Superpot, TwistingIdentityRandomTwists) {
  std::mt19937 rng(8);
  for (int i = 0; i < 40; ++i) {
    NCPoly w = ms_twist(omega_B(), random_invertible(rng));
    auto th = twisting_matrix(w);
    ASSERT_TRUE(th);
    ASSERT_TRUE(verifies(w, *th));
    ASSERT_TRUE(is_standard(w));
  }
}
