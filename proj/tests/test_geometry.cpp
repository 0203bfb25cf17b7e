#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "helpers.hpp"
#include "ncas/geometry.hpp"

using namespace ncas;
using namespace testing_helpers;

#ifndef NCAS_DATA_DIR
#define NCAS_DATA_DIR "data"
#endif

namespace {
Scalar S(const char* n) { return Scalar::param(n); }
Coords C(Scalar a, Scalar b) { return {a, b}; }
std::string slurp(const std::string& f) {
  std::ifstream in(std::string(NCAS_DATA_DIR) + "/" + f);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}
const GeometricPair& family(const std::string& type, size_t k) {
  static std::map<std::string, std::vector<GeometricPair>> cache;
  auto it = cache.find(type);
  if (it == cache.end()) it = cache.emplace(type, catalog_sigma(type)).first;
  return it->second.at(k);
}
}  // namespace

TEST(Geometry, PointsAndMaps) {
  EXPECT_TRUE(same_point(C(2, 4), C(1, 2)));
  EXPECT_FALSE(same_point(C(1, 0), C(0, 1)));
  EXPECT_THROW(ProjPoint(0, 0), Error);
  ProjPoint p = ProjPoint(3, 6).canonical();
  EXPECT_EQ(p.c[0], Scalar(1));
  EXPECT_EQ(p.c[1], Scalar(2));
  EXPECT_TRUE(same_mobius(LinearMap2(2, 0, 0, 2), LinearMap2()));
  EXPECT_FALSE(same_mobius(tau_alpha(2), LinearMap2()));
  // swap conjugated by rho sends (1,0) to (0,1) when rho = (0 1; gamma 0)
  Scalar g = S("gamma");
  LinearMap2 rho(0, 1, g, 0);
  auto ctx = *Assumptions().with_nonzero(g);
  EXPECT_TRUE(same_point(act(rho * swap_map() * rho.inverse(), C(1, 0)), C(0, 1), ctx));
}

TEST(Geometry, ApplySigma) {
  Scalar a = S("alpha"), lam = S("lambda");
  auto& s1 = family("S'", 0);
  auto [q, r] = apply_sigma(s1, 0, C(1, lam), C(1, 0));
  EXPECT_TRUE(same_point(q, C(1, 0)));
  EXPECT_TRUE(same_point(r, C(1, a * lam)));
  auto& fl2 = family("FL", 1);
  Coords u = generic_u();
  auto [q2, r2] = apply_sigma(fl2, 2, C(1, 0), u);
  EXPECT_EQ(q2, u);
  EXPECT_TRUE(same_point(r2, C(0, 1)));
  GeometricPair id;
  id.comps = {CurveComponent::graph(LinearMap2())};
  id.sigma = {{0, {}}};
  auto [q3, r3] = apply_sigma(id, 0, u, u);
  EXPECT_EQ(q3, u);
  EXPECT_EQ(r3, u);
  EXPECT_THROW(apply_sigma(s1, 0, C(1, 1), C(0, 1)), Error);
}

TEST(Geometry, CatalogE) {
  auto e = catalog_E("S'");
  ASSERT_EQ(e.size(), 3u);
  EXPECT_TRUE(same_component(e[0], CurveComponent::hline(point_P())));
  EXPECT_TRUE(same_component(e[1], CurveComponent::vline(point_P())));
  EXPECT_TRUE(same_component(e[2], CurveComponent::graph(swap_map())));
  auto t = catalog_E("T'1");
  EXPECT_TRUE(same_component(t[2], CurveComponent::graph(tau_alpha(S("alpha")))));
  EXPECT_EQ(catalog_E("FL").size(), 4u);
  EXPECT_THROW(catalog_E("ZZ"), Error);
}

TEST(Geometry, AllFamiliesAreGAutomorphisms) {
  size_t count = 0;
  for (std::string t : {"S'", "T'1", "T'2", "FL"})
    for (auto& E : catalog_sigma(t)) {
      std::string why;
      EXPECT_TRUE(is_G_automorphism(E, E.conditions, &why)) << E.tag << ": " << why;
      ++count;
    }
  EXPECT_EQ(count, 8u);
}

TEST(Geometry, MutatedFamiliesFail) {
  std::vector<GeometricPair> bad;
  {
    auto E = family("FL", 0);  // V targets exchanged
    std::swap(E.sigma[2], E.sigma[3]);
    bad.push_back(E);
  }
  {
    auto E = family("FL", 1);
    std::swap(E.sigma[2], E.sigma[3]);
    bad.push_back(E);
  }
  {
    auto E = family("S'", 0);
    E.sigma[1] = {2, {}};
    bad.push_back(E);
  }
  {
    auto E = family("S'", 1);
    E.sigma[0].map = tau_alpha(S("alpha"));
    bad.push_back(E);
  }
  {
    auto E = family("T'2", 0);
    E.sigma[2].map = LinearMap2();
    bad.push_back(E);
  }
  for (auto& E : bad) EXPECT_FALSE(is_G_automorphism(E, E.conditions)) << E.tag;
}

TEST(Geometry, IntersectionsOfGraphs) {
  auto A = CurveComponent::graph(LinearMap2()), B = CurveComponent::graph(LinearMap2(0, 1, 2, 0));
  auto pts = intersections(A, B);
  ASSERT_EQ(pts.size(), 2u);
  for (auto& [p, q] : pts) {
    EXPECT_TRUE(A.contains(p, q));
    EXPECT_TRUE(B.contains(p, q));
  }
  EXPECT_FALSE(same_point(pts[0].first, pts[1].first));
  auto T = CurveComponent::graph(tau_bg(1, 1));
  auto one = intersections(A, T);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_TRUE(same_point(one[0].first, C(1, 0)));
}

TEST(Geometry, Transport) {
  std::mt19937 rng(21);
  auto tau = swap_map();
  LinearMap2 rho(1, 2, 3, 5);
  auto moved = transport(CurveComponent::graph(tau), rho, rho);
  EXPECT_TRUE(same_mobius(moved.tau, rho * tau * rho.inverse()));
  auto& E = family("S'", 0);
  auto same = transport(E, LinearMap2(), LinearMap2());
  EXPECT_TRUE(match_components(same.comps, E.comps));
  LinearMap2 phi(1, 1, 0, 1);
  auto g = transport(CurveComponent::graph(LinearMap2()), LinearMap2(), phi);
  EXPECT_TRUE(same_mobius(g.tau, phi));
  // functoriality
  for (int i = 0; i < 50; ++i) {
    LinearMap2 t1 = random_invertible(rng), t2 = random_invertible(rng);
    LinearMap2 r1 = random_invertible(rng), r2 = random_invertible(rng);
    auto& F = family(i % 2 ? "FL" : "T'2", size_t(i % 2));
    auto a = transport(transport(F, t1, t2), r1, r2), b = transport(F, r1 * t1, r2 * t2);
    ASSERT_TRUE(match_components(a.comps, b.comps));
  }
  // conjugated sigma stays a G-automorphism
  auto& T1 = family("T'1", 1);
  auto c = transport(T1, rho, rho);
  EXPECT_TRUE(is_G_automorphism(c, T1.conditions));
}

TEST(Geometry, GammaParametrization) {
  GeometricPair id;
  id.comps = {CurveComponent::graph(LinearMap2())};
  id.sigma = {{0, {}}};
  auto g = gamma_parametrization(id);
  ASSERT_EQ(g.size(), 1u);
  EXPECT_EQ(g[0].p, generic_u());
  EXPECT_EQ(g[0].q, generic_u());
  EXPECT_EQ(g[0].r, generic_u());
  auto s = gamma_parametrization(family("S'", 0));
  EXPECT_TRUE(same_point(s[0].q, C(1, 0)));
  EXPECT_TRUE(same_point_in_u(s[0].r, act(tau_alpha(S("alpha")), generic_u()), {}));
  auto f = gamma_parametrization(family("FL", 0));
  EXPECT_TRUE(same_point(f[2].p, C(1, 0)));
  EXPECT_TRUE(same_point(f[2].r, C(1, 0)));
}

TEST(Geometry, ThreeLinesHaveNoGAutomorphism) {
  std::vector<CurveComponent> comps{CurveComponent::hline(point_P()), CurveComponent::hline(point_Q()),
                                    CurveComponent::vline(point_P())};
  std::vector<std::optional<LinearMap2>> maps{std::nullopt, LinearMap2(), tau_alpha(2), mu_alpha(3), swap_map()};
  std::vector<size_t> perm{0, 1, 2};
  int tried = 0;
  do {
    for (auto& m0 : maps)
      for (auto& m1 : maps)
        for (auto& m2 : maps) {
          GeometricPair E;
          E.comps = comps;
          E.sigma = {{perm[0], m0}, {perm[1], m1}, {perm[2], m2}};
          ++tried;
          ASSERT_FALSE(is_G_automorphism(E));
        }
  } while (std::next_permutation(perm.begin(), perm.end()));
  EXPECT_EQ(tried, 6 * 125);
}

TEST(Geometry, PairSpecFiles) {
  auto E = parse_pair_spec(slurp("sprime_i.pair"));
  EXPECT_EQ(E.tag, "S'");
  ASSERT_EQ(E.comps.size(), 3u);
  EXPECT_TRUE(match_components(E.comps, catalog_E("S'")));
  EXPECT_TRUE(is_G_automorphism(E, E.conditions));
  for (auto f : {"sprime_ii.pair", "fl_i.pair", "fl_ii.pair", "t2_i.pair"}) {
    auto F = parse_pair_spec(slurp(f));
    EXPECT_TRUE(is_G_automorphism(F, F.conditions)) << f;
  }
  std::string why;
  EXPECT_FALSE(is_G_automorphism(parse_pair_spec(slurp("broken.pair")), {}, &why));
  EXPECT_NE(why.find("disagrees"), std::string::npos) << why;
  EXPECT_THROW(parse_pair_spec("components:\n A: Z (1,0)\n"), Error);
  EXPECT_THROW(parse_pair_spec("components:\n A: V (1,0)\nsigma:\n A -> B\n"), Error);
  EXPECT_THROW(parse_pair_spec("components:\n A: V (0,0)\n"), Error);
}
