#pragma once

// Twisted superpotentials of degree 4, MS-twists, derivation-quotient relations.

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "ncas/freealg.hpp"

namespace ncas {

using NCMatrix2 = std::array<std::array<NCPoly, 2>, 2>;

namespace detail {
inline void require_potential(const NCPoly& w) {
  if (w.degree() != 4) throw Error(ErrorKind::WrongDegree, "expected degree 4, got " + std::to_string(w.degree()));
  if (w.is_zero()) throw Error(ErrorKind::ZeroInput, "zero potential");
}
inline bool is_zero_under(const NCPoly& p, const Assumptions& ctx) {
  for (auto& [w, c] : p.terms())
    if (!ctx.decide_zero(c)) return false;
  return true;
}
constexpr char kGens[2] = {'x', 'y'};
}  // namespace detail

inline bool is_superpotential(const NCPoly& w) {
  detail::require_potential(w);
  return rotate(w) == w;
}

// theta with (theta (x) id (x) id (x) id)(rotate(w)) == w, if one exists
inline std::optional<LinearMap2> twisting_matrix(const NCPoly& w0, const Assumptions& ctx = {}) {
  detail::require_potential(w0);
  NCPoly w = w0.reduce(ctx);
  // theta acts by v_j -> sum_k T_jk v_k; need  d_{v_k} w = sum_j T_jk (w d_{v_j})
  std::array<std::vector<Scalar>, 2> L, R;
  for (int k = 0; k < 2; ++k) {
    L[k] = left_derivative(w, detail::kGens[k]).vector();
    R[k] = right_derivative(w, detail::kGens[k]).vector();
  }
  Matrix A(16, 4);
  std::vector<Scalar> rhs(16);
  for (int k = 0; k < 2; ++k)
    for (int i = 0; i < 8; ++i) {
      size_t row = size_t(k * 8 + i);
      for (int j = 0; j < 2; ++j) A(row, size_t(j * 2 + k)) = R[j][size_t(i)];
      rhs[row] = L[k][size_t(i)];
    }
  auto part = solve(A, rhs, ctx);
  if (!part) return std::nullopt;
  auto null = nullspace(A, ctx);
  // pick an invertible member of the affine solution family
  std::vector<std::vector<Scalar>> cands{*part};
  static const int grid[] = {1, -1, 2, 3};
  for (int g : grid)
    for (size_t n = 0; n < null.size(); ++n) {
      auto v = *part;
      for (size_t i = 0; i < 4; ++i) v[i] += Scalar(g) * null[n][i];
      cands.push_back(v);
    }
  if (null.size() > 1) {
    auto v = *part;
    for (size_t n = 0; n < null.size(); ++n)
      for (size_t i = 0; i < 4; ++i) v[i] += Scalar(long(n + 1)) * null[n][i];
    cands.push_back(v);
  }
  std::optional<Scalar> undecided;
  for (auto& t : cands) {
    LinearMap2 T(t[0], t[1], t[2], t[3]);
    Sign s = ctx.sign(T.det());
    if (s == Sign::Nonzero) {
      LinearMap2 theta = T.inverse();
      NCPoly check = slot_map(rotate(w), {theta, LinearMap2(), LinearMap2(), LinearMap2()}).reduce(ctx);
      if (!detail::is_zero_under(check - w, ctx)) throw std::logic_error("twisting matrix failed its identity");
      return theta;
    }
    if (s == Sign::Unknown && !undecided) undecided = T.det();
  }
  if (undecided) throw CaseSplitRequired(ctx.pivot_for(*undecided));
  return std::nullopt;
}

inline NCPoly ms_twist(const NCPoly& w, const LinearMap2& theta, const Assumptions& ctx = {}) {
  if (ctx.is_zero(theta.det())) throw Error(ErrorKind::SingularMatrix, theta.to_string());
  std::vector<LinearMap2> maps;
  for (unsigned i = w.degree(); i-- > 0;) maps.push_back(theta.pow(i));
  return slot_map(w, maps);
}

inline std::optional<Scalar> aut_membership(const NCPoly& w0, const LinearMap2& theta, const Assumptions& ctx = {}) {
  if (w0.is_zero()) throw Error(ErrorKind::ZeroInput, "zero potential");
  if (ctx.is_zero(theta.det())) throw Error(ErrorKind::SingularMatrix, theta.to_string());
  NCPoly w = w0.reduce(ctx);
  NCPoly t = slot_map(w, std::vector<LinearMap2>(w.degree(), theta)).reduce(ctx);
  auto& [word, c] = *w.terms().begin();
  Scalar lambda = ctx.reduce(t.coeff(word) / c);
  if (!detail::is_zero_under(t - lambda * w, ctx)) return std::nullopt;
  if (ctx.decide_zero(lambda)) return std::nullopt;
  return lambda;
}

inline std::pair<NCPoly, NCPoly> derivation_quotient(const NCPoly& w) {
  if (w.is_zero()) throw Error(ErrorKind::ZeroInput, "zero potential");
  return {left_derivative(w, 'x'), left_derivative(w, 'y')};
}

inline NCMatrix2 m_matrix(const NCPoly& w) {
  if (w.is_zero()) throw Error(ErrorKind::ZeroInput, "zero potential");
  NCMatrix2 m;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      m[size_t(i)][size_t(j)] = right_derivative(left_derivative(w, detail::kGens[i]), detail::kGens[j]);
  return m;
}

inline bool derivatives_independent(const NCPoly& w, const Assumptions& ctx = {}) {
  auto [gx, gy] = derivation_quotient(w.reduce(ctx));
  return rank(coefficient_matrix({gx, gy}), ctx) == 2;
}

inline bool is_standard(const NCPoly& w, const Assumptions& ctx = {}) {
  if (!twisting_matrix(w, ctx)) throw Error(ErrorKind::NotTwistedSuperpotential, w.to_string());
  return derivatives_independent(w, ctx);
}

// Q with (x^t M)^t = Q g, g = (d_x w, d_y w)
inline LinearMap2 recover_Q(const NCPoly& w0, const Assumptions& ctx = {}) {
  NCPoly w = w0.reduce(ctx);
  if (!is_standard(w, ctx)) throw Error(ErrorKind::NotStandard, w.to_string());
  NCMatrix2 M = m_matrix(w);
  auto [gx, gy] = derivation_quotient(w);
  Matrix G(8, 2);
  auto vx = gx.vector(), vy = gy.vector();
  for (size_t i = 0; i < 8; ++i) G(i, 0) = vx[i], G(i, 1) = vy[i];
  Scalar q[4];
  for (size_t j = 0; j < 2; ++j) {
    NCPoly h = gen_x() * M[0][j] + gen_y() * M[1][j];
    auto s = solve(G, h.vector(), ctx);
    if (!s) throw Error(ErrorKind::NoSolution, "no Q for " + w.to_string());
    q[j * 2] = (*s)[0];
    q[j * 2 + 1] = (*s)[1];
  }
  return {q[0], q[1], q[2], q[3]};
}

struct PotentialReport {
  NCPoly omega{4};
  bool is_super = false;
  std::optional<LinearMap2> twisting;
  std::pair<NCPoly, NCPoly> derivatives;
  bool standard = false;
};

inline PotentialReport analyze_potential(const NCPoly& w, const Assumptions& ctx = {}) {
  PotentialReport r;
  r.omega = w.reduce(ctx);
  r.is_super = is_superpotential(r.omega);
  r.twisting = twisting_matrix(r.omega, ctx);
  r.derivatives = derivation_quotient(r.omega);
  r.standard = r.twisting && derivatives_independent(r.omega, ctx);
  return r;
}

// ---- reconstruction of w from (g1, g2) ----

struct PotentialSolution {
  NCPoly omega{4};
  Assumptions assumptions;
  std::array<Scalar, 4> abcd;  // w = a x g1 + b x g2 + c y g1 + d y g2
};

namespace detail {

// one potential for the current branch, or nullopt; may raise CaseSplitRequired
inline std::optional<PotentialSolution> potential_in_branch(const NCPoly& g1_, const NCPoly& g2_,
                                                            const Assumptions& ctx) {
  NCPoly g1 = g1_.reduce(ctx), g2 = g2_.reduce(ctx);
  if (rank(coefficient_matrix({g1, g2}), ctx) != 2) throw Error(ErrorKind::DependentRelations, "g1, g2 dependent");
  // functionals vanishing on span{g1, g2}
  auto comp = nullspace(coefficient_matrix({g1, g2}), ctx);
  std::array<NCPoly, 4> pieces{gen_x() * g1, gen_x() * g2, gen_y() * g1, gen_y() * g2};
  Matrix A(comp.size() * 2, 4);
  for (int v = 0; v < 2; ++v) {
    std::array<std::vector<Scalar>, 4> rv;
    for (size_t u = 0; u < 4; ++u) rv[u] = right_derivative(pieces[u], kGens[v]).vector();
    for (size_t k = 0; k < comp.size(); ++k)
      for (size_t u = 0; u < 4; ++u) {
        Scalar s;
        for (size_t i = 0; i < 8; ++i)
          if (!comp[k][i].is_zero() && !rv[u][i].is_zero()) s += comp[k][i] * rv[u][i];
        A(size_t(v) * comp.size() + k, u) = s;
      }
  }
  auto null = nullspace(A, ctx);
  if (null.empty()) return std::nullopt;
  std::vector<std::vector<Scalar>> cands = null;
  if (null.size() > 1) {
    std::vector<Scalar> s(4);
    for (size_t n = 0; n < null.size(); ++n)
      for (size_t i = 0; i < 4; ++i) s[i] += Scalar(long(n + 1)) * null[n][i];
    cands.push_back(s);
  }
  std::optional<Scalar> undecided;
  for (auto& v : cands) {
    Scalar det = ctx.reduce(v[0] * v[3] - v[1] * v[2]);
    Sign sg = ctx.sign(det);
    if (sg == Sign::Unknown && !undecided) undecided = det;
    if (sg != Sign::Nonzero) continue;
    NCPoly w = (v[0] * pieces[0] + v[1] * pieces[1] + v[2] * pieces[2] + v[3] * pieces[3]).reduce(ctx);
    if (!twisting_matrix(w, ctx)) continue;
    // right derivatives must span the relation space as well
    NCPoly rx = right_derivative(w, 'x'), ry = right_derivative(w, 'y');
    if (rank(coefficient_matrix({rx, ry}), ctx) != 2) continue;
    return PotentialSolution{w, ctx, {v[0], v[1], v[2], v[3]}};
  }
  if (undecided) throw CaseSplitRequired(ctx.pivot_for(*undecided));
  return std::nullopt;
}

}  // namespace detail

inline std::vector<PotentialSolution> potential_from_relations(const NCPoly& g1, const NCPoly& g2,
                                                               const Assumptions& ctx = {}) {
  if (g1.degree() != 3 || g2.degree() != 3) throw Error(ErrorKind::WrongDegree, "relations must be cubic");
  auto branches = explore(ctx, [&](const Assumptions& c) { return detail::potential_in_branch(g1, g2, c); });
  std::vector<PotentialSolution> out;
  for (auto& b : branches)
    if (b.value) {
      b.value->assumptions = b.assumptions;
      out.push_back(*b.value);
    }
  if (out.empty()) throw Error(ErrorKind::NoPotential, g1.to_string() + ", " + g2.to_string());
  return out;
}

// a == lambda b for some nonzero lambda
inline bool proportional(const NCPoly& a0, const NCPoly& b0, const Assumptions& ctx = {}) {
  NCPoly a = a0.reduce(ctx), b = b0.reduce(ctx);
  if (a.degree() != b.degree()) return false;
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  auto& [w, c] = *b.terms().begin();
  Scalar lambda = ctx.reduce(a.coeff(w) / c);
  return !lambda.is_zero() && detail::is_zero_under(a - lambda * b, ctx);
}

}  // namespace ncas
