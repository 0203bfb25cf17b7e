#pragma once

// P^1, Mobius maps, unions of lines and Mobius graphs in P^1 x P^1, and
// piecewise automorphisms sigma with pi_1 o sigma = pi_2.

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ncas/exprparse.hpp"
#include "ncas/freealg.hpp"

namespace ncas {

// ---- points and maps ----

inline Coords act(const LinearMap2& m, const Coords& p) {
  return {m.a() * p[0] + m.b() * p[1], m.c() * p[0] + m.d() * p[1]};
}

struct ProjPoint {
  Coords c;
  ProjPoint(Scalar a, Scalar b) : c{a, b} {
    if (a.is_zero() && b.is_zero()) throw Error(ErrorKind::ZeroVector, "(0:0)");
  }
  explicit ProjPoint(const Coords& x) : ProjPoint(x[0], x[1]) {}
  // first nonzero coordinate scaled to 1
  ProjPoint canonical(const Assumptions& ctx = {}) const {
    if (!ctx.decide_zero(c[0])) return {Scalar(1), ctx.reduce(c[1] / c[0])};
    return {Scalar(0), Scalar(1)};
  }
  std::string to_string() const { return "(" + c[0].to_string() + ":" + c[1].to_string() + ")"; }
};

inline ProjPoint point_P() { return {Scalar(1), Scalar(0)}; }
inline ProjPoint point_Q() { return {Scalar(0), Scalar(1)}; }

inline bool same_point(const Coords& a, const Coords& b, const Assumptions& ctx = {}) {
  return ctx.decide_zero(a[0] * b[1] - a[1] * b[0]);
}

// true when m1 and m2 agree in PGL_2
inline bool same_mobius(const LinearMap2& m1, const LinearMap2& m2, const Assumptions& ctx = {}) {
  const Scalar a[4] = {m1.a(), m1.b(), m1.c(), m1.d()}, b[4] = {m2.a(), m2.b(), m2.c(), m2.d()};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (!ctx.decide_zero(a[i] * b[j] - a[j] * b[i])) return false;
  return true;
}

inline LinearMap2 tau_alpha(const Scalar& a) { return LinearMap2::diag(1, a); }
inline LinearMap2 mu_alpha(const Scalar& a) { return {0, 1, a, 0}; }
inline LinearMap2 tau_bg(const Scalar& b, const Scalar& g) { return {1, b, 0, g}; }
inline LinearMap2 swap_map() { return {0, 1, 1, 0}; }

// generic point u = (u0 : u1) used for parametrizations
inline Coords generic_u() { return {Scalar::param("u0"), Scalar::param("u1")}; }

// s vanishes for every value of the generic point u
inline bool identically_zero_in_u(const Scalar& s0, const Assumptions& ctx) {
  Scalar s = ctx.reduce(s0);
  if (s.is_zero()) return true;
  Var u0 = param("u0"), u1 = param("u1");
  for (auto& c0 : s.num().coefficients_in(u0))
    for (auto& c1 : c0.coefficients_in(u1))
      if (!c1.is_zero() && !ctx.decide_zero(Scalar(c1))) return false;
  return true;
}

inline bool same_point_in_u(const Coords& a, const Coords& b, const Assumptions& ctx) {
  return identically_zero_in_u(a[0] * b[1] - a[1] * b[0], ctx);
}

// ---- components ----

enum class CompKind { VLine, HLine, Graph };

struct CurveComponent {
  CompKind kind;
  Coords pt{Scalar(1), Scalar(0)};  // VLine / HLine
  LinearMap2 tau;                   // Graph

  static CurveComponent vline(const ProjPoint& p) { return {CompKind::VLine, p.c, {}}; }
  static CurveComponent hline(const ProjPoint& q) { return {CompKind::HLine, q.c, {}}; }
  static CurveComponent graph(const LinearMap2& t) {
    if (t.det().is_zero()) throw Error(ErrorKind::SingularMatrix, t.to_string());
    return {CompKind::Graph, {Scalar(1), Scalar(0)}, t};
  }

  std::pair<Coords, Coords> parametrize(const Coords& u) const {
    switch (kind) {
      case CompKind::VLine: return {pt, u};
      case CompKind::HLine: return {u, pt};
      default: return {u, act(tau, u)};
    }
  }
  // coordinate that parametrizes the component
  const Coords& free_coordinate(const Coords& p, const Coords& q) const { return kind == CompKind::VLine ? q : p; }

  bool contains(const Coords& p, const Coords& q, const Assumptions& ctx = {}) const {
    switch (kind) {
      case CompKind::VLine: return same_point(p, pt, ctx);
      case CompKind::HLine: return same_point(q, pt, ctx);
      default: return same_point(q, act(tau, p), ctx);
    }
  }
  bool contains_in_u(const Coords& p, const Coords& q, const Assumptions& ctx) const {
    switch (kind) {
      case CompKind::VLine: return same_point_in_u(p, pt, ctx);
      case CompKind::HLine: return same_point_in_u(q, pt, ctx);
      default: return same_point_in_u(q, act(tau, p), ctx);
    }
  }

  std::string to_string() const {
    switch (kind) {
      case CompKind::VLine: return "V" + ProjPoint(pt).to_string();
      case CompKind::HLine: return "H" + ProjPoint(pt).to_string();
      default: return "C" + tau.to_string();
    }
  }
};

inline bool same_component(const CurveComponent& a, const CurveComponent& b, const Assumptions& ctx = {}) {
  if (a.kind != b.kind) return false;
  if (a.kind == CompKind::Graph) return same_mobius(a.tau, b.tau, ctx);
  return same_point(a.pt, b.pt, ctx);
}

// ---- pairs ----

struct SigmaDatum {
  size_t target = 0;
  // r = map(u) for the free coordinate u of the source; derived from the target when absent
  std::optional<LinearMap2> map;
};

struct GeometricPair {
  std::string tag;
  std::vector<std::string> labels;
  std::vector<CurveComponent> comps;
  std::vector<SigmaDatum> sigma;  // indexed by source component; empty when only E is known
  Assumptions conditions;
};

// second coordinate of sigma(p, q) for (p, q) on component i (no membership check)
inline Coords sigma_image(const GeometricPair& E, size_t i, const Coords& p, const Coords& q) {
  const SigmaDatum& s = E.sigma.at(i);
  const CurveComponent& src = E.comps.at(i);
  const CurveComponent& T = E.comps.at(s.target);
  if (s.map) return act(*s.map, src.free_coordinate(p, q));
  switch (T.kind) {
    case CompKind::HLine: return T.pt;
    case CompKind::Graph: return act(T.tau, q);
    default: throw Error(ErrorKind::InvalidPair, "sigma onto a vertical line needs an explicit map");
  }
}

inline std::pair<Coords, Coords> apply_sigma(const GeometricPair& E, size_t i, const Coords& p, const Coords& q,
                                             const Assumptions& ctx = {}) {
  if (i >= E.comps.size() || i >= E.sigma.size()) throw Error(ErrorKind::InvalidPair, "no such component");
  if (!E.comps[i].contains(p, q, ctx))
    throw Error(ErrorKind::PointNotOnComponent, ProjPoint(p).to_string() + "," + ProjPoint(q).to_string() +
                                                    " not on " + E.comps[i].to_string());
  return {q, sigma_image(E, i, p, q)};
}

// intersection points of two distinct components
inline std::vector<std::pair<Coords, Coords>> intersections(const CurveComponent& A, const CurveComponent& B,
                                                            const Assumptions& ctx = {}) {
  using K = CompKind;
  if (A.kind == B.kind && A.kind != K::Graph) return {};
  if (A.kind == K::HLine && B.kind == K::VLine) return intersections(B, A, ctx);
  if (A.kind == K::Graph && B.kind != K::Graph) return intersections(B, A, ctx);
  if (A.kind == K::VLine && B.kind == K::HLine) return {{A.pt, B.pt}};
  if (A.kind == K::VLine) return {{A.pt, act(B.tau, A.pt)}};
  if (A.kind == K::HLine) return {{act(B.tau.inverse(), A.pt), A.pt}};
  // graphs: fixed points of tau_B^{-1} tau_A
  LinearMap2 M = B.tau.inverse() * A.tau;
  Scalar a = M.a(), b = M.b(), c = M.c(), d = M.d();
  std::vector<Coords> ps;
  bool bz = ctx.decide_zero(b), cz = ctx.decide_zero(c), adz = ctx.decide_zero(a - d);
  if (bz && cz) {
    if (adz) throw Error(ErrorKind::InvalidPair, "coincident components");
    ps = {{Scalar(1), Scalar(0)}, {Scalar(0), Scalar(1)}};
  } else if (bz) {
    ps = {{Scalar(0), Scalar(1)}};
    if (!adz) ps.push_back({a - d, c});
  } else {
    Scalar disc = ctx.reduce((a - d) * (a - d) + 4 * b * c);
    if (ctx.decide_zero(disc)) {
      ps = {{b, (d - a) / 2}};
    } else {
      Scalar s = adjoin_sqrt(disc);
      for (int sg : {1, -1}) {
        Scalar lam = (a + d + Scalar(sg) * s) / 2;
        ps.push_back({b, lam - a});
      }
    }
  }
  std::vector<std::pair<Coords, Coords>> out;
  for (auto& p : ps) out.push_back({p, act(A.tau, p)});
  return out;
}

inline bool is_G_automorphism(const GeometricPair& E, const Assumptions& ctx0 = {}, std::string* why = nullptr) {
  auto fail = [&](const std::string& m) {
    if (why) *why = m;
    return false;
  };
  Assumptions ctx = ctx0;
  const size_t n = E.comps.size();
  if (E.sigma.size() != n) return fail("sigma must have one entry per component");
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      if (same_component(E.comps[i], E.comps[j], ctx)) return fail("repeated component");
  std::vector<bool> hit(n, false);
  for (auto& s : E.sigma) {
    if (s.target >= n || hit[s.target]) return fail("targets are not a permutation");
    hit[s.target] = true;
  }
  Coords u = generic_u();
  for (size_t i = 0; i < n; ++i) {
    auto [p, q] = E.comps[i].parametrize(u);
    Coords r;
    try {
      r = sigma_image(E, i, p, q);
    } catch (const Error& e) {
      return fail(e.what());
    }
    const CurveComponent& T = E.comps[E.sigma[i].target];
    if (!T.contains_in_u(q, r, ctx)) return fail("image of " + E.comps[i].to_string() + " leaves its target");
    // onto: the target's free coordinate must be a nondegenerate Mobius function of u
    const Coords& w = T.free_coordinate(q, r);
    auto at = [&](const Scalar& s, int k) {
      std::map<Var, Scalar> b{{param("u0"), Scalar(k == 0)}, {param("u1"), Scalar(k == 1)}};
      return s.substitute(b);
    };
    Scalar det = at(w[0], 0) * at(w[1], 1) - at(w[0], 1) * at(w[1], 0);
    if (ctx.decide_zero(det)) return fail("sigma collapses " + E.comps[i].to_string());
  }
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      for (auto& [p, q] : intersections(E.comps[i], E.comps[j], ctx)) {
        Coords ri = sigma_image(E, i, p, q), rj = sigma_image(E, j, p, q);
        if (!same_point(ri, rj, ctx))
          return fail("sigma disagrees at " + ProjPoint(p).to_string() + "x" + ProjPoint(q).to_string());
      }
  return true;
}

inline CurveComponent transport(const CurveComponent& c, const LinearMap2& t1, const LinearMap2& t2) {
  switch (c.kind) {
    case CompKind::VLine: return {c.kind, act(t1, c.pt), {}};
    case CompKind::HLine: return {c.kind, act(t2, c.pt), {}};
    default: return CurveComponent::graph(t2 * c.tau * t1.inverse());
  }
}

// (t1 x t2)(E); sigma is conjugated when t1 = t2 in PGL_2 and dropped otherwise
inline GeometricPair transport(const GeometricPair& E, const LinearMap2& t1, const LinearMap2& t2,
                               const Assumptions& ctx = {}) {
  if (ctx.is_zero(t1.det()) || ctx.is_zero(t2.det())) throw Error(ErrorKind::SingularMatrix, "transport");
  GeometricPair out = E;
  for (auto& c : out.comps) c = transport(c, t1, t2);
  if (same_mobius(t1, t2, ctx)) {
    LinearMap2 ti = t1.inverse();
    for (auto& s : out.sigma)
      if (s.map) s.map = t1 * *s.map * ti;
  } else {
    out.sigma.clear();
  }
  return out;
}

// true when the component sets agree; perm[i] = index in b of a's i-th component
inline std::optional<std::vector<size_t>> match_components(const std::vector<CurveComponent>& a,
                                                           const std::vector<CurveComponent>& b,
                                                           const Assumptions& ctx = {}) {
  if (a.size() != b.size()) return std::nullopt;
  std::vector<size_t> perm;
  std::vector<bool> used(b.size(), false);
  for (auto& c : a) {
    bool found = false;
    for (size_t j = 0; j < b.size() && !found; ++j)
      if (!used[j] && same_component(c, b[j], ctx)) used[j] = true, perm.push_back(j), found = true;
    if (!found) return std::nullopt;
  }
  return perm;
}

namespace detail {
template <class F>
GeometricPair map_pair_scalars(const GeometricPair& E, F red) {
  GeometricPair r = E;
  for (auto& c : r.comps) {
    c.pt = {red(c.pt[0]), red(c.pt[1])};
    c.tau = c.tau.map(red);
  }
  for (auto& s : r.sigma)
    if (s.map) s.map = s.map->map(red);
  return r;
}
}  // namespace detail

// simultaneous substitution into every scalar of the pair
inline GeometricPair specialize(const GeometricPair& E, const std::map<Var, Scalar>& b) {
  return detail::map_pair_scalars(E, [&](const Scalar& s) { return s.substitute(b); });
}

// every scalar of the pair reduced under ctx, which becomes the pair's conditions
inline GeometricPair specialize(const GeometricPair& E, const Assumptions& ctx) {
  GeometricPair r = detail::map_pair_scalars(E, [&](const Scalar& s) { return ctx.reduce(s); });
  r.conditions = ctx;
  return r;
}

struct GammaTriple {
  Coords p, q, r;
};

inline std::vector<GammaTriple> gamma_parametrization(const GeometricPair& E) {
  Coords u = generic_u();
  std::vector<GammaTriple> out;
  for (size_t i = 0; i < E.comps.size(); ++i) {
    auto [p, q] = E.comps[i].parametrize(u);
    out.push_back({p, q, sigma_image(E, i, p, q)});
  }
  return out;
}

// ---- catalogs ----

inline std::string canonical_type(std::string t) {
  std::string s;
  for (char ch : t)
    if (ch != '_' && ch != ' ') s += char(std::toupper((unsigned char)ch));
  // accept S', SP, T'1, T1', TP1, FL1 ...
  if (s == "S'" || s == "SP" || s == "SPRIME") return "S'";
  if (s == "T'1" || s == "T1'" || s == "TP1") return "T'1";
  if (s == "T'2" || s == "T2'" || s == "TP2") return "T'2";
  if (s == "T'" || s == "TP") return "T'";
  return s;
}

inline std::vector<CurveComponent> catalog_E(const std::string& type) {
  auto t = canonical_type(type);
  auto H = CurveComponent::hline, V = CurveComponent::vline;
  Scalar a = Scalar::param("alpha");
  if (t == "S'") return {H(point_P()), V(point_P()), CurveComponent::graph(swap_map())};
  if (t == "T'1") return {H(point_P()), V(point_P()), CurveComponent::graph(tau_alpha(a))};
  if (t == "T'2") return {H(point_P()), V(point_P()), CurveComponent::graph(tau_bg(1, 1))};
  if (t == "FL" || t == "FL1" || t == "FL2") return {H(point_P()), H(point_Q()), V(point_P()), V(point_Q())};
  throw Error(ErrorKind::UnknownType, type);
}

inline std::vector<GeometricPair> catalog_sigma(const std::string& type) {
  auto t = canonical_type(type);
  Scalar a = Scalar::param("alpha"), b = Scalar::param("beta"), g = Scalar::param("gamma");
  std::vector<GeometricPair> out;
  auto make = [&](const std::string& tag, const std::vector<std::string>& labels, std::vector<SigmaDatum> s,
                  Assumptions c) {
    GeometricPair E;
    E.tag = tag;
    E.labels = labels;
    E.comps = catalog_E(t == "FL1" || t == "FL2" ? "FL" : t);
    E.sigma = std::move(s);
    E.conditions = std::move(c);
    out.push_back(std::move(E));
  };
  // component order: H(P), V(P), C  /  H(P), H(Q), V(P), V(Q)
  if (t == "S'") {
    auto c = *Assumptions().with_nonzero(a);
    std::vector<std::string> L{"HP", "VP", "C"};
    make("S'(i)", L, {{1, tau_alpha(a)}, {0, {}}, {2, {}}}, c);
    make("S'(ii)", L, {{1, mu_alpha(a)}, {2, {}}, {0, {}}}, c);
  } else if (t == "T'1" || t == "T'2") {
    auto c = *Assumptions().with_nonzero(g);
    if (t == "T'1") c = *c.with_nonzero(a);
    std::vector<std::string> L{"HP", "VP", "C"};
    make(t + "(i)", L, {{1, tau_bg(b, g)}, {0, {}}, {2, {}}}, c);
    make(t + "(ii)", L, {{1, tau_bg(b, g)}, {2, {}}, {0, {}}}, c);
  } else if (t == "FL" || t == "FL1" || t == "FL2") {
    auto c = *Assumptions().with_nonzero(a * b);
    std::vector<std::string> L{"HP", "HQ", "VP", "VQ"};
    if (t != "FL2") make("FL(i)", L, {{2, tau_alpha(a)}, {3, tau_alpha(b)}, {0, {}}, {1, {}}}, c);
    if (t != "FL1") make("FL(ii)", L, {{2, mu_alpha(a)}, {3, mu_alpha(b)}, {1, {}}, {0, {}}}, c);
  } else {
    throw Error(ErrorKind::UnknownType, type);
  }
  return out;
}

// ---- pair-spec text ----
//
//   components:
//     A: V (1,0)
//     B: H (1,0)
//     C: G [[0,1],[1,0]]
//   sigma:
//     B -> A [[1,0],[0,a]]
//     A -> B
//     C -> C
//   assume: a != 0

namespace detail {
inline std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r"), e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

inline Coords parse_point(const std::string& text) {
  std::string t = trim(text);
  if (t.size() < 2 || t.front() != '(' || t.back() != ')')
    throw ParseError(ErrorKind::SyntaxError, 0, "point must look like (a,b)");
  std::string in = t.substr(1, t.size() - 2);
  int depth = 0;
  for (size_t i = 0; i < in.size(); ++i) {
    if (in[i] == '(') ++depth;
    if (in[i] == ')') --depth;
    if (in[i] == ',' && depth == 0) {
      Coords c{parse_scalar(in.substr(0, i), {true}), parse_scalar(in.substr(i + 1), {true})};
      ProjPoint chk(c);
      return c;
    }
  }
  throw ParseError(ErrorKind::SyntaxError, 0, "point must have two coordinates");
}
}  // namespace detail

inline GeometricPair parse_pair_spec(const std::string& text) {
  GeometricPair E;
  std::istringstream in(text);
  std::string line, section;
  std::vector<std::pair<std::string, std::string>> sigma_lines;
  int lineno = 0;
  auto bad = [&](const std::string& m) -> Error {
    return Error(ErrorKind::SyntaxError, "line " + std::to_string(lineno) + ": " + m);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    line = detail::trim(line);
    if (line.empty()) continue;
    if (line == "components:" || line == "sigma:") {
      section = line;
      continue;
    }
    if (line.rfind("type:", 0) == 0) {
      E.tag = detail::trim(line.substr(5));
      continue;
    }
    if (line.rfind("assume:", 0) == 0) {
      std::string cl = detail::trim(line.substr(7));
      auto ne = cl.find("!=");
      if (ne == std::string::npos) throw bad("only '!=' assumptions are supported");
      Scalar lhs = parse_scalar(cl.substr(0, ne), {true}) - parse_scalar(cl.substr(ne + 2), {true});
      auto c = E.conditions.with_nonzero(lhs);
      if (!c) throw bad("contradictory assumption");
      E.conditions = *c;
      continue;
    }
    if (section == "components:") {
      auto colon = line.find(':');
      if (colon == std::string::npos) throw bad("expected 'label: kind data'");
      std::string label = detail::trim(line.substr(0, colon)), rest = detail::trim(line.substr(colon + 1));
      if (label.empty() || rest.empty()) throw bad("empty label or component");
      char kind = char(std::toupper((unsigned char)rest[0]));
      std::string data = detail::trim(rest.substr(1));
      if (kind == 'V')
        E.comps.push_back(CurveComponent::vline(ProjPoint(detail::parse_point(data))));
      else if (kind == 'H')
        E.comps.push_back(CurveComponent::hline(ProjPoint(detail::parse_point(data))));
      else if (kind == 'G' || kind == 'C')
        E.comps.push_back(CurveComponent::graph(parse_matrix(data, {true})));
      else
        throw bad("component kind must be V, H or G");
      for (auto& l : E.labels)
        if (l == label) throw bad("duplicate label " + label);
      E.labels.push_back(label);
    } else if (section == "sigma:") {
      auto arrow = line.find("->");
      if (arrow == std::string::npos) throw bad("expected 'source -> target [matrix]'");
      sigma_lines.push_back({detail::trim(line.substr(0, arrow)), detail::trim(line.substr(arrow + 2))});
    } else {
      throw bad("content outside a section");
    }
  }
  auto index = [&](const std::string& l) {
    for (size_t i = 0; i < E.labels.size(); ++i)
      if (E.labels[i] == l) return i;
    throw Error(ErrorKind::InvalidPair, "unknown component label " + l);
  };
  if (!sigma_lines.empty()) {
    E.sigma.assign(E.comps.size(), SigmaDatum{size_t(-1), {}});
    std::vector<bool> seen(E.comps.size(), false);
    for (auto& [src, rest] : sigma_lines) {
      size_t s = index(src);
      if (seen[s]) throw Error(ErrorKind::InvalidPair, "sigma given twice for " + src);
      seen[s] = true;
      auto sp = rest.find_first_of(" \t[");
      std::string tgt = detail::trim(rest.substr(0, sp));
      E.sigma[s].target = index(tgt);
      if (sp != std::string::npos) {
        std::string m = detail::trim(rest.substr(sp));
        if (!m.empty()) E.sigma[s].map = parse_matrix(m, {true});
      }
    }
    for (size_t i = 0; i < seen.size(); ++i)
      if (!seen[i]) throw Error(ErrorKind::InvalidPair, "sigma missing for " + E.labels[i]);
  }
  if (E.comps.empty()) throw Error(ErrorKind::InvalidPair, "no components");
  return E;
}

}  // namespace ncas
