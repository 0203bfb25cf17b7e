#pragma once

// Isomorphism and graded Morita conditions between algebras of a common type.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ncas/exprparse.hpp"
#include "ncas/g2solver.hpp"
#include "ncas/superpot.hpp"

namespace ncas {

// ---- catalog of types ----

struct TypeRow {
  std::string type;
  std::vector<std::string> params;
  std::array<std::string, 2> relations;
  std::vector<std::string> nonzero;  // each entry must not vanish
  std::string iso;                   // closed-form isomorphism condition, "" when one class
};

inline const std::vector<TypeRow>& type_rows() {
  static const std::vector<TypeRow> rows{
      {"P1", {"alpha"}, {"x^2*y - alpha*y*x^2", "x*y^2 - alpha*y^2*x"}, {"alpha"}, "alpha' = alpha^(+-1)"},
      {"P2", {}, {"x^2*y - y*x^2 + y*x*y", "x*y^2 - y^2*x + y^3"}, {}, ""},
      {"S1",
       {"alpha", "beta"},
       {"alpha*beta*x^2*y + (alpha+beta)*x*y*x + y*x^2", "alpha*beta*x*y^2 + (alpha+beta)*y*x*y + y^2*x"},
       {"alpha*beta", "alpha^2 - beta^2"},
       "{alpha',beta'} = {alpha,beta}, {1/alpha,1/beta}"},
      {"S2",
       {"alpha", "beta"},
       {"x*y^2 + y^2*x + (alpha+beta)*x^3", "x^2*y + y*x^2 + (1/alpha + 1/beta)*y^3"},
       {"alpha*beta", "alpha^2 - beta^2"},
       "alpha'/beta' = (alpha/beta)^(+-1)"},
      {"T1",
       {"beta"},
       {"x^2*y - 2*x*y*x + y*x^2 - 2*(2*beta-1)*y*x*y + 2*(2*beta-1)*x*y^2 + 2*beta*(beta-1)*y^3",
        "x*y^2 - 2*y*x*y + y^2*x"},
       {},
       "beta' = beta, -beta"},
      {"T2", {}, {"x^2*y + 2*x*y*x + y*x^2 + 2*y^3", "x*y^2 + 2*y*x*y + y^2*x"}, {}, ""},
      {"S'", {}, {"x*y^2 - y^2*x", "x^2*y + y*x^2 - 2*y^3"}, {}, ""},
      {"T'1", {"alpha"}, {"x*y^2 - y^2*x", "x^2*y - y*x^2 + alpha*y*x*y - alpha*x*y^2"}, {"alpha"}, ""},
      {"T'2",
       {"alpha"},
       {"x*y^2 - y^2*x + 2*y^3", "x^2*y - y*x^2 - alpha*x*y^2 + alpha*y*x*y + 2*y^2*x - (alpha+2)*y^3"},
       {"alpha - 2"},
       "alpha' = alpha"},
      {"FL1", {"alpha"}, {"x*y^2 + alpha*y^2*x", "x^2*y - alpha*y*x^2"}, {"alpha"}, "alpha' = alpha, -1/alpha"},
      {"FL2",
       {"alpha", "beta"},
       {"-alpha*x^3 + y*x*y", "beta*x*y*x - y^3"},
       {"alpha*beta", "alpha - beta"},
       "(alpha',beta') = (alpha,beta) in P^1"},
      {"TWL", {}, {"x*y^2 + y^2*x", "x^2*y + y*x^2 + y^3"}, {}, ""},
      {"WL1",
       {"alpha"},
       {"alpha^2*x*y^2 + y^2*x - 2*alpha*y*x*y", "alpha^2*x^2*y + y*x^2 - 2*alpha*x*y*x"},
       {"alpha"},
       "alpha' = alpha^(+-1)"},
      {"WL2", {}, {"x*y^2 + y^2*x - 2*y*x*y", "x^2*y + y*x^2 - 2*x*y*x + 4*x*y^2 - 4*y*x*y + 2*y^3"}, {}, ""},
  };
  return rows;
}

inline const TypeRow& type_row(const std::string& type) {
  auto t = canonical_type(type);
  for (auto& r : type_rows())
    if (r.type == t) return r;
  throw Error(ErrorKind::UnknownType, type);
}

// class at the granularity of graded Morita equivalence
inline std::string morita_class(const std::string& type) {
  auto t = type_row(type).type;
  if (t == "P1" || t == "P2") return "P";
  if (t == "S1" || t == "S2") return "S";
  if (t == "T1" || t == "T2") return "T";
  if (t == "T'1" || t == "T'2") return "T'";
  if (t == "FL1" || t == "FL2") return "FL";
  if (t == "WL1" || t == "WL2") return "WL";
  return t;
}

// ---- instances ----

struct AlgebraInstance {
  std::string type;
  std::map<std::string, Scalar> params;
  std::pair<NCPoly, NCPoly> relations{NCPoly(3), NCPoly(3)};
  Assumptions conditions;

  Scalar param(const std::string& name) const {
    auto it = params.find(name);
    if (it == params.end()) throw Error(ErrorKind::UnboundParameter, type + " needs " + name);
    return it->second;
  }
  std::map<Var, Scalar> binding() const {
    std::map<Var, Scalar> b;
    for (auto& [n, v] : params) b[ncas::param(n)] = v;
    return b;
  }
};

inline AlgebraInstance make_instance(const std::string& type, const std::map<std::string, Scalar>& params = {},
                                     const Assumptions& ctx = {}) {
  const TypeRow& row = type_row(type);
  AlgebraInstance a;
  a.type = row.type;
  for (auto& [n, v] : params)
    if (std::find(row.params.begin(), row.params.end(), n) == row.params.end())
      throw Error(ErrorKind::ArityMismatch, row.type + " has no parameter " + n);
  for (auto& n : row.params) {
    auto it = params.find(n);
    if (it == params.end()) throw Error(ErrorKind::UnboundParameter, row.type + " needs " + n);
    a.params[n] = it->second;
  }
  auto b = a.binding();
  auto sub = [&](const Scalar& s) { return s.substitute(b); };
  ParseOptions opt{.declare_parameters = true};
  a.relations = {parse_ncpoly(row.relations[0], opt, 3).map_coefficients(sub),
                 parse_ncpoly(row.relations[1], opt, 3).map_coefficients(sub)};
  a.conditions = ctx;
  for (auto& c : row.nonzero) {
    Scalar v = sub(parse_scalar(c, opt));
    auto next = a.conditions.with_nonzero(v);
    if (!next) throw Error(ErrorKind::AssumptionViolated, row.type + ": " + c + " != 0");
    a.conditions = *next;
  }
  return a;
}

// parameters replaced by the symbols name + suffix
inline AlgebraInstance symbolic_instance(const std::string& type, const std::string& suffix = "") {
  std::map<std::string, Scalar> ps;
  for (auto& n : type_row(type).params) ps[n] = Scalar::param(n + suffix);
  return make_instance(type, ps);
}

// geometric pair (E, sigma) realizing the instance
inline GeometricPair pair_of(const AlgebraInstance& a) {
  Var al = param("alpha"), be = param("beta"), ga = param("gamma");
  auto pick = [](const std::string& t, size_t k) { return catalog_sigma(t).at(k); };
  GeometricPair E;
  std::map<Var, Scalar> b;
  if (a.type == "S'") {
    E = pick("S'", 0);
    b = {{al, Scalar(-1)}};
  } else if (a.type == "T'1") {
    E = pick("T'1", 0);
    b = {{al, Scalar(1)}, {be, a.param("alpha")}, {ga, Scalar(1)}};
  } else if (a.type == "T'2") {
    E = pick("T'2", 0);
    b = {{be, a.param("alpha")}, {ga, Scalar(1)}};
  } else if (a.type == "FL1") {
    E = pick("FL1", 0);
    b = {{al, a.param("alpha")}, {be, -a.param("alpha")}};
  } else if (a.type == "FL2") {
    E = pick("FL2", 0);
    b = {{al, a.param("alpha")}, {be, a.param("beta")}};
  } else {
    throw Error(ErrorKind::UnknownType, "no geometric pair for " + a.type);
  }
  GeometricPair r = specialize(E, b);
  r.tag = a.type;
  r.conditions = a.conditions;
  return r;
}

// ---- stabilizers ----

struct StabilizerShape {
  std::string name;
  LinearMap2 rho;
  std::vector<Var> unknowns;
};

inline std::vector<StabilizerShape> stabilizer_family(const std::string& shape) {
  std::string s = shape == "C_id" || shape == "C_tau11" || shape == "quadrangle" ? shape : canonical_type(shape);
  Scalar b = Scalar::param("rho_b"), c = Scalar::param("rho_c"), d = Scalar::param("rho_d");
  Var vb = param("rho_b"), vc = param("rho_c"), vd = param("rho_d");
  if (s == "C_id" || s == "T'1") return {{"upper", {1, b, 0, d}, {vb, vd}}};
  if (s == "C_tau11" || s == "T'2") return {{"unipotent", {1, b, 0, 1}, {vb}}};
  if (s == "quadrangle" || s == "FL" || s == "FL1" || s == "FL2")
    return {{"diagonal", LinearMap2::diag(1, d), {vd}}, {"antidiagonal", {0, 1, c, 0}, {vc}}};
  // fixes P; the conic condition is left to the equations
  if (s == "S'") return {{"upper", {1, b, 0, d}, {vb, vd}}};
  throw Error(ErrorKind::UnknownType, shape);
}

namespace detail {

inline void push_u_coefficients(std::vector<Scalar>& eqs, const Scalar& s, const Assumptions& ctx) {
  for (auto& [m, c] : u_coefficients(ctx.reduce(s)))
    if (!c.is_zero()) eqs.push_back(c);
}

// conditions for (r0 x r1)(Ea) = Eb and sigma_b o (r0 x r1) = (r1 x r2) o sigma_a; nullopt when impossible
inline std::optional<std::vector<Scalar>> diagram_equations(const GeometricPair& Ea, const GeometricPair& Eb,
                                                            const LinearMap2& r0, const LinearMap2& r1,
                                                            const LinearMap2& r2, const Assumptions& ctx) {
  if (Ea.comps.size() != Eb.comps.size()) return std::nullopt;
  std::vector<Scalar> eqs;
  Coords u = generic_u();
  for (size_t i = 0; i < Ea.comps.size(); ++i) {
    CurveComponent T = transport(Ea.comps[i], r0, r1);
    std::optional<size_t> j;
    std::vector<size_t> graphs;
    for (size_t k = 0; k < Eb.comps.size(); ++k) {
      if (Eb.comps[k].kind != T.kind) continue;
      if (T.kind == CompKind::Graph)
        graphs.push_back(k);
      else if (same_point(T.pt, Eb.comps[k].pt, ctx))
        j = k;
    }
    if (T.kind == CompKind::Graph) {
      if (graphs.size() == 1) {
        j = graphs[0];
        const LinearMap2& t = Eb.comps[*j].tau;
        const Scalar x[4] = {T.tau.a(), T.tau.b(), T.tau.c(), T.tau.d()}, y[4] = {t.a(), t.b(), t.c(), t.d()};
        for (int m = 0; m < 4; ++m)
          for (int n = m + 1; n < 4; ++n) {
            Scalar e = ctx.reduce(x[m] * y[n] - x[n] * y[m]);
            if (!e.is_zero()) eqs.push_back(e);
          }
      } else {
        for (size_t k : graphs)
          if (same_component(T, Eb.comps[k], ctx)) j = k;
      }
    }
    if (!j) return std::nullopt;
    auto [p, q] = Ea.comps[i].parametrize(u);
    Coords P = act(r0, p), Q = act(r1, q);
    Coords ra = sigma_image(Ea, i, p, q), rb = sigma_image(Eb, *j, P, Q);
    Coords lhs = act(r2, ra);
    push_u_coefficients(eqs, rb[0] * lhs[1] - rb[1] * lhs[0], ctx);
  }
  return eqs;
}

// every branch of ctx on which all equations vanish
inline std::vector<Assumptions> solve_equations(const std::vector<Scalar>& eqs, const Assumptions& ctx,
                                                int depth = 0) {
  for (auto& e : eqs) {
    Sign s = ctx.sign(e);
    if (s == Sign::Zero) continue;
    if (s == Sign::Nonzero) return {};
    if (depth >= 6) throw Error(ErrorKind::CaseSplitDepth, "equation system too deep at " + e.to_string());
    std::vector<Assumptions> out;
    for (auto& z : ctx.with_zero(e))
      for (auto& r : solve_equations(eqs, z, depth + 1)) out.push_back(r);
    return out;
  }
  return {ctx};
}

inline Assumptions merged(Assumptions ctx, const Assumptions& more) {
  for (auto& f : more.nonzero()) {
    auto n = ctx.with_nonzero(f);
    if (!n) throw Error(ErrorKind::AssumptionViolated, f.to_string() + " != 0");
    ctx = *n;
  }
  return ctx;
}

// free unknowns get small values keeping rho invertible and the assumptions alive
inline std::optional<LinearMap2> pick_witness(const LinearMap2& rho, const std::vector<Var>& unknowns,
                                              Assumptions ctx) {
  for (Var v : unknowns) {
    if (ctx.bindings().count(v)) continue;
    if (!ctx.reduce(rho.a()).vars().count(v) && !ctx.reduce(rho.b()).vars().count(v) &&
        !ctx.reduce(rho.c()).vars().count(v) && !ctx.reduce(rho.d()).vars().count(v))
      continue;
    bool ok = false;
    for (int k : {0, 1, -1, 2, 3}) {
      auto n = ctx.with_binding(v, Scalar(k));
      if (n && n->known_nonzero(rho.det())) {
        ctx = *n;
        ok = true;
        break;
      }
    }
    if (!ok) return std::nullopt;
  }
  return rho.map([&](const Scalar& s) { return ctx.reduce(s); });
}

}  // namespace detail

// ---- isomorphism ----

struct IsoBranch {
  Assumptions assumptions;  // includes any relation forced between the two parameter sets
  LinearMap2 witness;
  std::string shape;
};

struct IsoResult {
  bool isomorphic = false;
  std::vector<IsoBranch> branches;
  std::string reason;
};

// PGL_2 conjugacy of 2x2 matrices
inline bool pgl2_conjugate(const LinearMap2& A, const LinearMap2& B, const Assumptions& ctx = {}) {
  auto scalar = [&](const LinearMap2& m) {
    return ctx.decide_zero(m.b()) && ctx.decide_zero(m.c()) && ctx.decide_zero(m.a() - m.d());
  };
  if (ctx.decide_zero(A.det()) || ctx.decide_zero(B.det())) throw Error(ErrorKind::SingularMatrix, "pgl2_conjugate");
  bool sa = scalar(A), sb = scalar(B);
  if (sa || sb) return sa && sb;
  Scalar ta = A.a() + A.d(), tb = B.a() + B.d();
  return ctx.decide_zero(ta * ta * B.det() - tb * tb * A.det());
}

inline bool wl_isomorphic(const Scalar& a, const Scalar& a2, const Assumptions& ctx = {}) {
  return ctx.decide_zero((a2 - a) * (a2 * a - 1));
}

inline IsoResult iso_condition(const AlgebraInstance& a, const AlgebraInstance& b, const Assumptions& ctx0 = {}) {
  IsoResult res;
  static const std::vector<std::string> solvable{"S'", "T'1", "T'2", "FL1", "FL2", "WL1", "WL2", "TWL"};
  for (auto* t : {&a.type, &b.type})
    if (std::find(solvable.begin(), solvable.end(), *t) == solvable.end())
      throw Error(ErrorKind::TypeMismatch, "no isomorphism solver for " + *t);
  if (a.type != b.type) {
    res.reason = "different types";
    return res;
  }
  Assumptions ctx = detail::merged(detail::merged(ctx0, a.conditions), b.conditions);
  if (a.type == "WL2" || a.type == "TWL") {
    res.isomorphic = true;
    res.branches.push_back({ctx, LinearMap2(), "identity"});
    return res;
  }
  if (a.type == "WL1") {
    Scalar x = a.param("alpha"), y = b.param("alpha");
    res.isomorphic = pgl2_conjugate(LinearMap2::diag(1, x), LinearMap2::diag(1, y), ctx);
    if (res.isomorphic)
      res.branches.push_back(
          {ctx, ctx.decide_zero(x - y) ? LinearMap2() : swap_map(), ctx.decide_zero(x - y) ? "identity" : "swap"});
    return res;
  }
  GeometricPair Ea = pair_of(a), Eb = pair_of(b);
  for (auto& shape : stabilizer_family(a.type)) {
    auto c = ctx.with_nonzero(shape.rho.det());
    if (!c) continue;
    for (Var v : shape.unknowns) c->prefer(v);
    for (auto& [n, v] : b.params)
      for (Var w : v.vars()) c->prefer(w);
    auto eqs = detail::diagram_equations(Ea, Eb, shape.rho, shape.rho, shape.rho, *c);
    if (!eqs) continue;
    for (auto& br : detail::solve_equations(*eqs, *c)) {
      auto w = detail::pick_witness(shape.rho, shape.unknowns, br);
      if (!w) continue;
      auto check = detail::diagram_equations(Ea, Eb, *w, *w, *w, br);
      if (!check || !detail::solve_equations(*check, br).size()) throw std::logic_error("witness failed");
      res.branches.push_back({br, *w, shape.name});
    }
  }
  res.isomorphic = !res.branches.empty();
  if (!res.isomorphic) res.reason = "no stabilizer element intertwines the automorphisms";
  return res;
}

// ---- graded Morita equivalence ----

inline bool morita_condition(const AlgebraInstance& a, const AlgebraInstance& b, const Assumptions& ctx0 = {}) {
  std::string ca = morita_class(a.type), cb = morita_class(b.type);
  if (ca != cb) return false;
  Assumptions ctx = detail::merged(detail::merged(ctx0, a.conditions), b.conditions);
  if (ca == "FL") {
    // FL1 instances all lie in the class of (1, -1)
    auto coords = [](const AlgebraInstance& i) -> std::pair<Scalar, Scalar> {
      if (i.type == "FL1") return {Scalar(1), Scalar(-1)};
      return {i.param("alpha"), i.param("beta")};
    };
    auto [x, y] = coords(a);
    auto [x2, y2] = coords(b);
    return ctx.decide_zero(x * y2 - x2 * y) || ctx.decide_zero(x * x2 - y * y2);
  }
  if (ca == "S") {
    if (a.type != "S1" || b.type != "S1") throw Error(ErrorKind::TypeMismatch, "S-class condition is stated for S1");
    Scalar r = a.param("alpha") / a.param("beta"), r2 = b.param("alpha") / b.param("beta");
    return ctx.decide_zero((r2 - r) * (r2 * r - 1));
  }
  return true;
}

struct MobiusSequence {
  unsigned period = 1;
  // entries may use the index symbol "i" and the symbol "pw" standing for power_base^floor(i / period)
  std::vector<LinearMap2> residues;
  std::optional<Scalar> power_base;

  // rho_{i+s} for i in residue class k
  LinearMap2 at(unsigned k, unsigned s) const {
    unsigned kk = k + s, r = kk % period, carry = kk / period;
    std::map<Var, Scalar> b{{param("i"), Scalar::param("i") + Scalar(long(s))}};
    if (power_base) b[param("pw")] = Scalar::param("pw") * power_base->pow(long(carry));
    return residues.at(r).map([&](const Scalar& x) { return x.substitute(b); });
  }
};

namespace detail {
// det(rho) never vanishes for integer i
inline void check_sequence(const MobiusSequence& seq, const Assumptions& ctx) {
  if (seq.period == 0 || seq.residues.size() != seq.period)
    throw Error(ErrorKind::InvalidSequence, "need one map per residue class");
  Var iv = param("i");
  for (auto& m : seq.residues) {
    Scalar d = ctx.reduce(m.det());
    if (ctx.known_nonzero(d)) continue;
    if (d.is_zero()) throw Error(ErrorKind::InvalidSequence, "singular map " + m.to_string());
    Poly n = d.num();
    if (n.vars() == std::set<Var>{iv} && n.degree_in(iv) == 1) {
      auto cs = n.coefficients_in(iv);
      Scalar root = -Scalar(cs[0]) / Scalar(cs[1]);
      if (root.is_constant() && root.constant_value().get_den() != 1) continue;
    }
    throw Error(ErrorKind::InvalidSequence, "determinant " + d.to_string() + " may vanish");
  }
}
}  // namespace detail

inline bool verify_morita_sequence(const AlgebraInstance& a, const AlgebraInstance& b, const MobiusSequence& seq,
                                   const Assumptions& ctx0 = {}) {
  Assumptions ctx = detail::merged(detail::merged(ctx0, a.conditions), b.conditions);
  if (seq.power_base) {
    auto c = ctx.with_nonzero(*seq.power_base);
    auto d = c ? c->with_nonzero(Scalar::param("pw")) : std::nullopt;
    if (!d) throw Error(ErrorKind::InvalidSequence, "power base vanishes");
    ctx = *d;
  }
  detail::check_sequence(seq, ctx);
  GeometricPair Ea = pair_of(a), Eb = pair_of(b);
  // must hold identically in i, pw and the free parameters
  for (unsigned k = 0; k < seq.period; ++k) {
    std::optional<std::vector<Scalar>> eqs;
    try {
      eqs = detail::diagram_equations(Ea, Eb, seq.at(k, 0), seq.at(k, 1), seq.at(k, 2), ctx);
    } catch (const CaseSplitRequired&) {
      return false;
    }
    if (!eqs) return false;
    for (auto& e : *eqs)
      if (!ctx.reduce(e).is_zero()) return false;
  }
  return true;
}

// ---- WL / TWL ----

inline NCPoly omega_B() {
  return parse_ncpoly("x^2*y^2 + x*y^2*x + y^2*x^2 + y*x^2*y - 2*x*y*x*y - 2*y*x*y*x");
}

struct WLCatalog {
  NCPoly omega_B{4};
  std::pair<NCPoly, NCPoly> B1{NCPoly(3), NCPoly(3)};  // symbol alpha
  std::pair<NCPoly, NCPoly> B2{NCPoly(3), NCPoly(3)};
  std::pair<NCPoly, NCPoly> TWL{NCPoly(3), NCPoly(3)};
};

inline WLCatalog wl_catalog() {
  WLCatalog c;
  c.omega_B = omega_B();
  Scalar a = Scalar::param("alpha");
  c.B1 = derivation_quotient(ms_twist(c.omega_B, LinearMap2::diag(1, a), *Assumptions().with_nonzero(a)));
  c.B2 = derivation_quotient(ms_twist(c.omega_B, LinearMap2(1, 1, 0, 1)));
  auto& row = type_row("TWL");
  c.TWL = {parse_ncpoly(row.relations[0]), parse_ncpoly(row.relations[1])};
  return c;
}

}  // namespace ncas
