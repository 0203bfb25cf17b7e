#pragma once

#include <random>
#include <set>

#include "ncas/freealg.hpp"

namespace testing_helpers {

using namespace ncas;

inline Scalar random_coeff(std::mt19937& rng, const std::vector<Scalar>& ps) {
  std::uniform_int_distribution<int> c(-3, 3), k(0, 3);
  Scalar s(c(rng));
  if (!ps.empty() && k(rng) == 0) s += ps[size_t(rng() % ps.size())];
  return s;
}

inline NCPoly random_ncpoly(std::mt19937& rng, unsigned deg, const std::vector<Scalar>& ps = {}, int terms = 4) {
  NCPoly p(deg);
  for (int i = 0; i < terms; ++i) p.add(NCPoly::word_at(deg, rng() % (size_t(1) << deg)), random_coeff(rng, ps));
  return p;
}

inline LinearMap2 random_invertible(std::mt19937& rng, const std::vector<Scalar>& ps = {}) {
  while (true) {
    LinearMap2 m(random_coeff(rng, ps), random_coeff(rng, ps), random_coeff(rng, ps), random_coeff(rng, ps));
    if (!m.det().is_zero()) return m;
  }
}

inline NCPoly omega_B() {
  NCPoly w(4);
  w.add("xxyy", Scalar(1));
  w.add("xyyx", Scalar(1));
  w.add("xyxy", Scalar(-2));
  w.add("yxxy", Scalar(1));
  w.add("yyxx", Scalar(1));
  w.add("yxyx", Scalar(-2));
  return w;
}

}  // namespace testing_helpers
