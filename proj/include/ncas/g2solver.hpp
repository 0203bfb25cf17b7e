#pragma once

// Relation space of the algebra attached to a geometric pair (E, sigma).

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "ncas/geometry.hpp"

namespace ncas {

struct RelationBasis {
  std::vector<NCPoly> basis;
  Assumptions assumptions;
  size_t dimension = 0;
  std::vector<std::string> extra;  // assumptions added by case splits
};

namespace detail {

// coefficients of s as a polynomial in u0, u1 (s must be polynomial in u)
inline std::map<std::pair<unsigned, unsigned>, Scalar> u_coefficients(const Scalar& s) {
  std::map<std::pair<unsigned, unsigned>, Scalar> out;
  if (s.is_zero()) return out;
  Var u0 = param("u0"), u1 = param("u1");
  if (s.den().contains(u0) || s.den().contains(u1)) throw std::logic_error("u in a denominator");
  Scalar den(s.den());
  auto c0 = s.num().coefficients_in(u0);
  for (unsigned i = 0; i < c0.size(); ++i) {
    auto c1 = c0[i].coefficients_in(u1);
    for (unsigned j = 0; j < c1.size(); ++j)
      if (!c1[j].is_zero()) out[{i, j}] = Scalar(c1[j]) / den;
  }
  return out;
}

// linear conditions on the 8 cubic coefficients, one row per (component, u-monomial)
inline Matrix g2_constraints(const GeometricPair& E) {
  Matrix A(0, 8);
  for (auto& t : gamma_parametrization(E)) {
    std::map<std::pair<unsigned, unsigned>, std::vector<Scalar>> rows;
    for (size_t k = 0; k < 8; ++k) {
      NCPoly w = NCPoly::word(NCPoly::word_at(3, k));
      for (auto& [m, c] : u_coefficients(evaluate_multilinear(w, {t.p, t.q, t.r}))) {
        auto& row = rows[m];
        row.resize(8);
        row[k] = c;
      }
    }
    for (auto& [m, row] : rows) A.append_row(row);
  }
  return A;
}

inline void require_valid(const GeometricPair& E, const Assumptions& ctx) {
  std::string why;
  if (!is_G_automorphism(E, ctx, &why)) throw Error(ErrorKind::InvalidPair, why);
}

}  // namespace detail

// one entry per case branch; ctx defaults to the pair's own conditions
inline std::vector<RelationBasis> relations_from_pair(const GeometricPair& E,
                                                      const std::optional<Assumptions>& ctx0 = std::nullopt) {
  const Assumptions& ctx = ctx0 ? *ctx0 : E.conditions;
  detail::require_valid(E, ctx);
  Matrix A = detail::g2_constraints(E);
  auto branches = explore(ctx, [&](const Assumptions& c) { return nullspace(A, c); });
  auto base = ctx.describe();
  std::vector<RelationBasis> out;
  for (auto& b : branches) {
    RelationBasis r;
    r.assumptions = b.assumptions;
    for (auto& v : b.value) r.basis.push_back(NCPoly::from_vector(3, v).reduce(b.assumptions));
    r.dimension = r.basis.size();
    for (auto& d : b.assumptions.describe())
      if (std::find(base.begin(), base.end(), d) == base.end()) r.extra.push_back(d);
    out.push_back(std::move(r));
  }
  return out;
}

inline bool check_g2_membership(const NCPoly& f, const GeometricPair& E,
                                const std::optional<Assumptions>& ctx0 = std::nullopt) {
  const Assumptions& ctx = ctx0 ? *ctx0 : E.conditions;
  detail::require_valid(E, ctx);
  if (f.is_zero()) return true;
  if (f.degree() != 3) throw Error(ErrorKind::WrongDegree, "relations are cubic");
  for (auto& t : gamma_parametrization(E))
    if (!identically_zero_in_u(evaluate_multilinear(f, {t.p, t.q, t.r}), ctx)) return false;
  return true;
}

}  // namespace ncas
