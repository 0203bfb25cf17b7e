#pragma once

// Bihomogeneous forms on P^1 x P^1 and the AS-regularity criterion for cubic potentials.

#include <array>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "ncas/geometry.hpp"
#include "ncas/superpot.hpp"

namespace ncas {

// sum of c_{ij} x1^i y1^(d1-i) x2^j y2^(d2-j)
class BiForm {
 public:
  BiForm(unsigned d1 = 0, unsigned d2 = 0) : d1_(d1), d2_(d2) {}
  static BiForm monomial(unsigned d1, unsigned d2, unsigned i, unsigned j, const Scalar& c = Scalar(1)) {
    BiForm f(d1, d2);
    f.add(i, j, c);
    return f;
  }

  unsigned d1() const { return d1_; }
  unsigned d2() const { return d2_; }
  const std::map<std::pair<unsigned, unsigned>, Scalar>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  Scalar coeff(unsigned i, unsigned j) const {
    auto it = t_.find({i, j});
    return it == t_.end() ? Scalar() : it->second;
  }

  void add(unsigned i, unsigned j, const Scalar& c) {
    if (i > d1_ || j > d2_) throw Error(ErrorKind::WrongDegree, "exponent exceeds bidegree");
    if (c.is_zero()) return;
    Scalar& s = t_[{i, j}];
    s += c;
    if (s.is_zero()) t_.erase({i, j});
  }
  BiForm& operator+=(const BiForm& o) {
    check(o);
    for (auto& [k, c] : o.t_) add(k.first, k.second, c);
    return *this;
  }
  BiForm& operator-=(const BiForm& o) {
    check(o);
    for (auto& [k, c] : o.t_) add(k.first, k.second, -c);
    return *this;
  }
  friend BiForm operator+(BiForm a, const BiForm& b) { return a += b; }
  friend BiForm operator-(BiForm a, const BiForm& b) { return a -= b; }
  friend BiForm operator*(const Scalar& s, const BiForm& f) {
    BiForm r(f.d1_, f.d2_);
    for (auto& [k, c] : f.t_) r.add(k.first, k.second, s * c);
    return r;
  }
  friend BiForm operator*(const BiForm& a, const BiForm& b) {
    BiForm r(a.d1_ + b.d1_, a.d2_ + b.d2_);
    for (auto& [ka, ca] : a.t_)
      for (auto& [kb, cb] : b.t_) r.add(ka.first + kb.first, ka.second + kb.second, ca * cb);
    return r;
  }
  bool operator==(const BiForm& o) const { return d1_ == o.d1_ && d2_ == o.d2_ && t_ == o.t_; }
  bool operator!=(const BiForm& o) const { return !(*this == o); }

  BiForm reduce(const Assumptions& ctx) const {
    BiForm r(d1_, d2_);
    for (auto& [k, c] : t_) r.add(k.first, k.second, ctx.reduce(c));
    return r;
  }

  Scalar evaluate(const Coords& p, const Coords& q) const {
    Scalar r;
    for (auto& [k, c] : t_)
      r += c * p[0].pow(k.first) * p[1].pow(d1_ - k.first) * q[0].pow(k.second) * q[1].pow(d2_ - k.second);
    return r;
  }

  std::string to_string() const {
    if (t_.empty()) return "0";
    std::string s;
    bool first = true;
    for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
      auto [i, j] = it->first;
      const Scalar& c = it->second;
      std::string mon;
      auto put = [&](const char* v, unsigned e) {
        if (!e) return;
        if (!mon.empty()) mon += "*";
        mon += v;
        if (e > 1) mon += "^" + std::to_string(e);
      };
      put("x1", i), put("y1", d1_ - i), put("x2", j), put("y2", d2_ - j);
      bool simple = c.den() == Poly(1) && c.num().size() == 1;
      bool neg = simple && c.num().lead_coeff() < 0;
      Scalar a = neg ? -c : c;
      s += first ? (neg ? "-" : "") : (neg ? " - " : " + ");
      first = false;
      std::string cs = simple ? a.to_string() : "(" + a.to_string() + ")";
      if (mon.empty())
        s += cs;
      else if (a.is_one())
        s += mon;
      else
        s += cs + "*" + mon;
    }
    return s;
  }

 private:
  void check(const BiForm& o) const {
    if (o.d1_ != d1_ || o.d2_ != d2_) throw Error(ErrorKind::WrongDegree, "bidegree mismatch");
  }
  unsigned d1_, d2_;
  std::map<std::pair<unsigned, unsigned>, Scalar> t_;
};

inline BiForm to_biform(const NCPoly& t) {
  if (t.degree() != 2) throw Error(ErrorKind::WrongDegree, "Segre map needs degree 2");
  BiForm f(1, 1);
  for (auto& [w, c] : t.terms()) f.add(w[0] == 'x', w[1] == 'x', c);
  return f;
}

inline BiForm det_segre(const NCMatrix2& M) {
  return to_biform(M[0][0]) * to_biform(M[1][1]) - to_biform(M[0][1]) * to_biform(M[1][0]);
}

// ---- binary forms: coefficient i belongs to x^i y^(d-i) ----

using BinaryForm = std::vector<Scalar>;

namespace detail {

inline void trim_under(BinaryForm& f, const Assumptions& ctx) {
  while (!f.empty() && ctx.decide_zero(f.back())) f.pop_back();
}

// gcd of univariate polynomials (index = exponent) over the scalar field
inline BinaryForm upoly_gcd_under(BinaryForm a, BinaryForm b, const Assumptions& ctx) {
  for (auto& c : a) c = ctx.reduce(c);
  for (auto& c : b) c = ctx.reduce(c);
  trim_under(a, ctx), trim_under(b, ctx);
  while (!b.empty()) {
    while (a.size() >= b.size()) {
      Scalar q = a.back() / b.back();
      size_t sh = a.size() - b.size();
      for (size_t i = 0; i < b.size(); ++i) a[i + sh] = ctx.reduce(a[i + sh] - q * b[i]);
      a.pop_back();
      trim_under(a, ctx);
    }
    std::swap(a, b);
  }
  return a;
}

}  // namespace detail

// some point of P^1 annihilates every form (true when all forms vanish identically)
inline bool have_common_root(const std::vector<BinaryForm>& forms, const Assumptions& ctx = {}) {
  // forms whose coefficients are undecided under ctx are only needed if the rest share a root
  std::vector<BinaryForm> live, sure;
  std::optional<CaseSplitRequired> pending;
  for (auto f : forms) {
    BinaryForm raw = f;
    try {
      detail::trim_under(f, ctx);
    } catch (const CaseSplitRequired& e) {
      if (!pending) pending = e;
      continue;
    }
    sure.push_back(raw);
    if (!f.empty()) live.push_back(f);
  }
  if (pending) {
    if (!live.empty() && !have_common_root(sure, ctx)) return false;
    throw *pending;
  }
  if (live.empty()) return true;
  // (1:0) is a root iff the x^d coefficient vanishes; trimmed length tells us
  size_t top = 0;
  for (auto& f : forms) top = std::max(top, f.size());
  bool at_infinity = true;
  for (auto& f : live)
    if (f.size() == top) at_infinity = false;
  if (at_infinity) return true;
  // chart y = 1
  BinaryForm g = live[0];
  for (size_t i = 1; i < live.size() && g.size() > 1; ++i) g = detail::upoly_gcd_under(g, live[i], ctx);
  return g.size() > 1;
}

// no (p, q) in P^1 x P^1 kills all four bidegree (1,1) entries
inline bool common_zero_empty(const std::array<BiForm, 4>& entries, const Assumptions& ctx = {}) {
  std::array<BinaryForm, 4> A, B;
  for (size_t k = 0; k < 4; ++k) {
    const BiForm& e = entries[k];
    if (e.d1() != 1 || e.d2() != 1) throw Error(ErrorKind::WrongDegree, "entries must have bidegree (1,1)");
    A[k] = {e.coeff(0, 1), e.coeff(1, 1)};  // coefficient of x2
    B[k] = {e.coeff(0, 0), e.coeff(1, 0)};  // coefficient of y2
  }
  auto mul = [](const BinaryForm& f, const BinaryForm& g) {
    BinaryForm r(f.size() + g.size() - 1);
    for (size_t i = 0; i < f.size(); ++i)
      for (size_t j = 0; j < g.size(); ++j) r[i + j] += f[i] * g[j];
    return r;
  };
  std::vector<BinaryForm> minors;
  for (size_t k = 0; k < 4; ++k)
    for (size_t l = k + 1; l < 4; ++l) {
      BinaryForm m = mul(A[k], B[l]), n = mul(A[l], B[k]);
      for (size_t i = 0; i < m.size(); ++i) m[i] -= n[i];
      minors.push_back(m);
    }
  return !have_common_root(minors, ctx);
}

inline std::array<BiForm, 4> segre_entries(const NCMatrix2& M) {
  return {to_biform(M[0][0]), to_biform(M[0][1]), to_biform(M[1][0]), to_biform(M[1][1])};
}

// twisted superpotential, standard, and empty common zero locus of M(w)
inline bool is_as_regular(const NCPoly& w0, const Assumptions& ctx = {}, std::string* why = nullptr) {
  if (w0.is_zero()) throw Error(ErrorKind::ZeroInput, "zero potential");
  NCPoly w = w0.reduce(ctx);
  auto fail = [&](const char* m) {
    if (why) *why = m;
    return false;
  };
  if (!twisting_matrix(w, ctx)) return fail("not a twisted superpotential");
  if (!derivatives_independent(w, ctx)) return fail("not standard");
  if (!common_zero_empty(segre_entries(m_matrix(w)), ctx)) return fail("entries of M have a common zero");
  return true;
}

inline std::vector<Branch<bool>> as_regular_branches(const NCPoly& w, const Assumptions& ctx = {}) {
  return explore(ctx, [&](const Assumptions& c) { return is_as_regular(w, c); });
}

inline bool vanishes_on_component(const BiForm& f, const CurveComponent& c, const Assumptions& ctx = {}) {
  if (f.is_zero()) return true;
  auto [p, q] = c.parametrize(generic_u());
  return identically_zero_in_u(f.evaluate(p, q), ctx);
}

}  // namespace ncas
