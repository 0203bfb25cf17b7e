#pragma once

// Sparse commutative polynomials over Q in the global parameter symbols.

#include <gmpxx.h>

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cstdint>
#include <deque>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ncas/error.hpp"

namespace ncas {

using Var = std::uint32_t;

std::string symbol_name(Var v);

// exponent vector, sorted by variable index, no zero exponents
class Monomial {
 public:
  using Factor = std::pair<Var, unsigned>;

  Monomial() = default;
  static Monomial var(Var v, unsigned e = 1) {
    Monomial m;
    if (e) m.f_.push_back({v, e});
    return m;
  }

  const std::vector<Factor>& factors() const { return f_; }
  bool is_one() const { return f_.empty(); }

  unsigned degree() const {
    unsigned d = 0;
    for (auto& [v, e] : f_) d += e;
    return d;
  }
  unsigned degree_in(Var v) const {
    for (auto& [w, e] : f_)
      if (w == v) return e;
    return 0;
  }
  bool contains(Var v) const { return degree_in(v) != 0; }

  Monomial operator*(const Monomial& o) const {
    Monomial r;
    r.f_.reserve(f_.size() + o.f_.size());
    size_t i = 0, j = 0;
    while (i < f_.size() || j < o.f_.size()) {
      if (j == o.f_.size() || (i < f_.size() && f_[i].first < o.f_[j].first)) {
        r.f_.push_back(f_[i++]);
      } else if (i == f_.size() || o.f_[j].first < f_[i].first) {
        r.f_.push_back(o.f_[j++]);
      } else {
        r.f_.push_back({f_[i].first, f_[i].second + o.f_[j].second});
        ++i, ++j;
      }
    }
    return r;
  }

  // this / o if divisible
  std::optional<Monomial> divide(const Monomial& o) const {
    Monomial r;
    size_t i = 0;
    for (auto& [v, e] : o.f_) {
      while (i < f_.size() && f_[i].first < v) r.f_.push_back(f_[i++]);
      if (i == f_.size() || f_[i].first != v || f_[i].second < e) return std::nullopt;
      if (f_[i].second > e) r.f_.push_back({v, f_[i].second - e});
      ++i;
    }
    while (i < f_.size()) r.f_.push_back(f_[i++]);
    return r;
  }

  Monomial without(Var v) const {
    Monomial r;
    for (auto& f : f_)
      if (f.first != v) r.f_.push_back(f);
    return r;
  }
  Monomial with(Var v, unsigned e) const {
    Monomial r = without(v);
    if (!e) return r;
    auto it = std::lower_bound(r.f_.begin(), r.f_.end(), Factor{v, 0},
                               [](const Factor& a, const Factor& b) { return a.first < b.first; });
    r.f_.insert(it, {v, e});
    return r;
  }

  bool operator==(const Monomial& o) const { return f_ == o.f_; }
  bool operator!=(const Monomial& o) const { return f_ != o.f_; }

  // graded lex, smaller variable index is more significant
  static int compare(const Monomial& a, const Monomial& b) {
    unsigned da = a.degree(), db = b.degree();
    if (da != db) return da > db ? 1 : -1;
    size_t i = 0, j = 0;
    while (i < a.f_.size() && j < b.f_.size()) {
      if (a.f_[i].first != b.f_[j].first) return a.f_[i].first < b.f_[j].first ? 1 : -1;
      if (a.f_[i].second != b.f_[j].second) return a.f_[i].second > b.f_[j].second ? 1 : -1;
      ++i, ++j;
    }
    if (i < a.f_.size()) return 1;
    if (j < b.f_.size()) return -1;
    return 0;
  }

 private:
  std::vector<Factor> f_;
};

struct MonomialGreater {
  bool operator()(const Monomial& a, const Monomial& b) const { return Monomial::compare(a, b) > 0; }
};

class Poly {
 public:
  using Terms = std::map<Monomial, mpq_class, MonomialGreater>;

  Poly() = default;
  Poly(long c) { if (c) t_[Monomial()] = c; }
  Poly(const mpq_class& c) {
    if (c != 0) {
      mpq_class k = c;
      k.canonicalize();
      t_[Monomial()] = k;
    }
  }
  static Poly var(Var v, unsigned e = 1) {
    Poly p;
    p.t_[Monomial::var(v, e)] = 1;
    return p;
  }
  static Poly term(const Monomial& m, const mpq_class& c) {
    Poly p;
    if (c != 0) p.t_[m] = c;
    return p;
  }

  const Terms& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_.begin()->first.is_one()); }
  mpq_class constant_value() const {
    auto it = t_.find(Monomial());
    return it == t_.end() ? mpq_class(0) : it->second;
  }
  size_t size() const { return t_.size(); }

  const Monomial& lead_monomial() const { return t_.begin()->first; }
  const mpq_class& lead_coeff() const { return t_.begin()->second; }

  unsigned total_degree() const { return t_.empty() ? 0 : t_.begin()->first.degree(); }
  unsigned degree_in(Var v) const {
    unsigned d = 0;
    for (auto& [m, c] : t_) d = std::max(d, m.degree_in(v));
    return d;
  }
  std::set<Var> vars() const {
    std::set<Var> s;
    for (auto& [m, c] : t_)
      for (auto& [v, e] : m.factors()) s.insert(v);
    return s;
  }
  bool contains(Var v) const {
    for (auto& [m, c] : t_)
      if (m.contains(v)) return true;
    return false;
  }

  Poly operator-() const {
    Poly r = *this;
    for (auto& [m, c] : r.t_) c = -c;
    return r;
  }
  Poly& operator+=(const Poly& o) {
    for (auto& [m, c] : o.t_) add_term(m, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    for (auto& [m, c] : o.t_) add_term(m, -c);
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    Poly r;
    if (a.is_zero() || b.is_zero()) return r;
    for (auto& [ma, ca] : a.t_)
      for (auto& [mb, cb] : b.t_) r.add_term(ma * mb, ca * cb);
    return r;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  Poly scaled(const mpq_class& c) const {
    if (c == 0) return Poly();
    Poly r = *this;
    for (auto& [m, k] : r.t_) k *= c;
    return r;
  }
  Poly times(const Monomial& mono) const {
    Poly r;
    for (auto& [m, c] : t_) r.t_.emplace(m * mono, c);
    return r;
  }
  Poly pow(unsigned e) const {
    Poly r(1), b = *this;
    while (e) {
      if (e & 1) r *= b;
      e >>= 1;
      if (e) b *= b;
    }
    return r;
  }

  bool operator==(const Poly& o) const { return t_ == o.t_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  void add_term(const Monomial& m, const mpq_class& c) {
    if (c == 0) return;
    auto [it, fresh] = t_.try_emplace(m, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) t_.erase(it);
    }
  }

  // coefficients as a polynomial in v: result[e] is the coefficient of v^e
  std::vector<Poly> coefficients_in(Var v) const {
    std::vector<Poly> r(degree_in(v) + 1);
    for (auto& [m, c] : t_) r[m.degree_in(v)].t_.emplace(m.without(v), c);
    return r;
  }
  static Poly from_coefficients(Var v, const std::vector<Poly>& cs) {
    Poly r;
    for (size_t e = 0; e < cs.size(); ++e)
      for (auto& [m, c] : cs[e].t_) r.add_term(m * Monomial::var(v, unsigned(e)), c);
    return r;
  }

  // substitute v := value
  Poly substitute(Var v, const Poly& value) const {
    auto cs = coefficients_in(v);
    Poly r;
    for (size_t e = cs.size(); e-- > 0;) r = r * value + cs[e];
    return r;
  }

  // lcm of denominators times gcd-free integer content
  mpq_class content() const {
    if (t_.empty()) return 0;
    mpz_class g = 0, l = 1;
    for (auto& [m, c] : t_) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num_mpz_t());
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    }
    mpq_class r(g, l);
    r.canonicalize();
    return r;
  }
  // integer-primitive with positive leading coefficient
  Poly primitive() const {
    if (t_.empty()) return *this;
    mpq_class c = content();
    if (lead_coeff() < 0) c = -c;
    return scaled(1 / c);
  }
  Poly monic() const { return t_.empty() ? *this : scaled(1 / lead_coeff()); }

  std::string to_string() const;

 private:
  Terms t_;
};

// exact quotient a / b, nullopt if b does not divide a
inline std::optional<Poly> divide_exact(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw Error(ErrorKind::DivisionByZero, "polynomial division by zero");
  if (b.is_constant()) return a.scaled(1 / b.constant_value());
  Poly r = a, q;
  const Monomial& lb = b.lead_monomial();
  const mpq_class& cb = b.lead_coeff();
  while (!r.is_zero()) {
    auto m = r.lead_monomial().divide(lb);
    if (!m) return std::nullopt;
    mpq_class c = r.lead_coeff() / cb;
    q.add_term(*m, c);
    r -= (b.times(*m)).scaled(c);
  }
  return q;
}

namespace detail {

inline Poly pseudo_remainder(const Poly& a, const Poly& b, Var v) {
  auto bc = b.coefficients_in(v);
  size_t m = bc.size() - 1;
  const Poly& lb = bc[m];
  Poly r = a;
  unsigned n = r.degree_in(v);
  if (n < m) return r;
  unsigned e = n - unsigned(m) + 1;
  while (!r.is_zero() && r.degree_in(v) >= m) {
    unsigned d = r.degree_in(v);
    Poly lr = r.coefficients_in(v)[d];
    r = lb * r - lr * b * Poly::var(v, d - unsigned(m));
    --e;
  }
  return r * lb.pow(e);
}

Poly gcd_impl(const Poly& a, const Poly& b);

inline Poly content_in(const Poly& a, Var v) {
  Poly g;
  for (auto& c : a.coefficients_in(v)) {
    if (c.is_zero()) continue;
    g = g.is_zero() ? c.primitive() : gcd_impl(g, c);
    if (g.is_constant()) return Poly(1);
  }
  return g;
}

inline Poly monomial_gcd(const Poly& a, const Poly& b) {
  // a is a single term
  Monomial m = a.lead_monomial();
  for (auto& [mb, c] : b.terms()) {
    Monomial r;
    for (auto& [v, e] : m.factors()) {
      unsigned f = std::min(e, mb.degree_in(v));
      if (f) r = r * Monomial::var(v, f);
    }
    m = r;
    if (m.is_one()) break;
  }
  return Poly::term(m, 1);
}

using UPoly = std::vector<mpq_class>;  // dense, index = exponent

inline void trim(UPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline UPoly upoly_rem(UPoly a, const UPoly& b) {
  while (a.size() >= b.size()) {
    mpq_class q = a.back() / b.back();
    size_t shift = a.size() - b.size();
    for (size_t i = 0; i < b.size(); ++i) a[i + shift] -= q * b[i];
    a.pop_back();
    trim(a);
  }
  return a;
}

inline UPoly upoly_gcd(UPoly a, UPoly b) {
  trim(a), trim(b);
  while (!b.empty()) {
    UPoly r = upoly_rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

inline size_t upoly_gcd_degree(UPoly a, UPoly b) {
  UPoly g = upoly_gcd(std::move(a), std::move(b));
  return g.empty() ? 0 : g.size() - 1;
}

// image of p in Q[v] at the point where every other symbol w takes pt(w)
template <class Pt>
inline UPoly univariate_image(const Poly& p, Var v, Pt pt) {
  UPoly r(p.degree_in(v) + 1);
  for (auto& [m, c] : p.terms()) {
    mpq_class t = c;
    unsigned e = 0;
    for (auto& [w, k] : m.factors()) {
      if (w == v) {
        e = k;
        continue;
      }
      mpz_class pw;
      mpz_pow_ui(pw.get_mpz_t(), mpz_class(pt(w)).get_mpz_t(), k);
      t *= pw;
    }
    r[e] += t;
  }
  return r;
}

// true when an evaluation image proves deg_v gcd(a, b) == 0
inline bool images_coprime_in(const Poly& a, const Poly& b, Var v) {
  unsigned da = a.degree_in(v), db = b.degree_in(v);
  static const long primes[] = {3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73};
  for (int attempt = 0; attempt < 3; ++attempt) {
    auto pt = [&](Var w) { return primes[(w * 7 + attempt * 5) % 20] * (attempt + 1) - long(w % 3); };
    UPoly ia = univariate_image(a, v, pt), ib = univariate_image(b, v, pt);
    trim(ia), trim(ib);
    if (ia.size() != da + 1 || ib.size() != db + 1) continue;  // leading coefficient vanished
    return upoly_gcd_degree(ia, ib) == 0;
  }
  return false;
}

inline Poly gcd_impl(const Poly& a, const Poly& b) {
  if (a.is_zero()) return b.primitive();
  if (b.is_zero()) return a.primitive();
  if (a.is_constant() || b.is_constant()) return Poly(1);
  if (a.size() == 1) return monomial_gcd(a, b);
  if (b.size() == 1) return monomial_gcd(b, a);
  auto va = a.vars(), vb = b.vars();
  std::vector<Var> common;
  for (Var v : va)
    if (vb.count(v)) common.push_back(v);
  if (common.empty()) return Poly(1);
  if (va.size() == 1 && vb.size() == 1) {
    Var v = common[0];
    auto ua = univariate_image(a, v, [](Var) { return 0L; });
    auto ub = univariate_image(b, v, [](Var) { return 0L; });
    UPoly g = upoly_gcd(ua, ub);
    Poly r;
    for (size_t e = 0; e < g.size(); ++e)
      if (g[e] != 0) r += Poly::var(v).pow(unsigned(e)).scaled(g[e]);
    return r;
  }
  bool coprime = true;
  for (Var v : common)
    if (!images_coprime_in(a, b, v)) {
      coprime = false;
      break;
    }
  if (coprime) return Poly(1);
  for (Var v : va)
    if (!vb.count(v)) return gcd_impl(content_in(a, v), b);
  for (Var v : vb)
    if (!va.count(v)) return gcd_impl(a, content_in(b, v));
  // main variable: lowest degree
  Var v = common[0];
  for (Var w : common)
    if (std::max(a.degree_in(w), b.degree_in(w)) < std::max(a.degree_in(v), b.degree_in(v))) v = w;
  Poly ca = content_in(a, v), cb = content_in(b, v);
  Poly c = gcd_impl(ca, cb);
  Poly A = divide_exact(a, ca)->primitive(), B = divide_exact(b, cb)->primitive();
  if (A.degree_in(v) < B.degree_in(v)) std::swap(A, B);
  // subresultant PRS
  Poly g(1), h(1);
  while (true) {
    unsigned d = A.degree_in(v) - B.degree_in(v);
    Poly r = pseudo_remainder(A, B, v);
    if (r.is_zero()) break;
    if (r.degree_in(v) == 0) return c;
    A = B;
    B = *divide_exact(r, g * h.pow(d));
    g = A.coefficients_in(v).back();
    if (d == 0) {
      // h unchanged
    } else if (d == 1) {
      h = g;
    } else {
      h = *divide_exact(g.pow(d), h.pow(d - 1));
    }
  }
  return (c * *divide_exact(B, content_in(B, v))).primitive();
}

}  // namespace detail

// normalized: integer-primitive, positive leading coefficient
inline Poly gcd(const Poly& a, const Poly& b) { return detail::gcd_impl(a, b).primitive(); }

// exact square root if p is a perfect square (up to the sign of the leading coefficient)
inline std::optional<Poly> poly_sqrt(const Poly& p) {
  if (p.is_zero()) return Poly();
  const Monomial& lm = p.lead_monomial();
  Monomial half;
  for (auto& [v, e] : lm.factors()) {
    if (e % 2) return std::nullopt;
    half = half * Monomial::var(v, e / 2);
  }
  mpq_class lc = p.lead_coeff();
  if (lc < 0) return std::nullopt;
  mpz_class n = lc.get_num(), d = lc.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
  mpz_class sn, sd;
  mpz_sqrt(sn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(sd.get_mpz_t(), d.get_mpz_t());
  Poly s = Poly::term(half, mpq_class(sn, sd));
  Poly r = p - s * s;
  // peel leading terms: next term of s is LT(r) / (2 LT(s))
  for (unsigned guard = 0; !r.is_zero() && guard < p.size() * 4 + 16; ++guard) {
    auto m = r.lead_monomial().divide(half);
    if (!m) return std::nullopt;
    if (Monomial::compare(*m, half) >= 0) return std::nullopt;
    mpq_class c = r.lead_coeff() / (mpq_class(sn, sd) * 2);
    Poly t = Poly::term(*m, c);
    r -= t * (s + s + t);
    s += t;
  }
  if (!r.is_zero()) return std::nullopt;
  return s;
}

// ---- symbol table ----

enum class SymbolKind { Parameter, SquareRoot };

struct SymbolInfo {
  std::string name;
  SymbolKind kind;
  Poly radicand;  // only for square roots; free of square-root symbols
};

class SymbolTable {
 public:
  static SymbolTable& instance() {
    static SymbolTable t;
    return t;
  }

  Var parameter(const std::string& name) {
    if (name == "x" || name == "y")
      throw Error(ErrorKind::InvalidSymbol, "'" + name + "' is reserved for generators");
    if (name.empty() || !(std::isalpha((unsigned char)name[0]) || name[0] == '_'))
      throw Error(ErrorKind::InvalidSymbol, "bad parameter name '" + name + "'");
    for (char c : name)
      if (!(std::isalnum((unsigned char)c) || c == '_'))
        throw Error(ErrorKind::InvalidSymbol, "bad parameter name '" + name + "'");
    std::unique_lock lock(mu_);
    auto it = by_name_.find(name);
    if (it != by_name_.end()) {
      if (syms_[it->second].kind != SymbolKind::Parameter)
        throw Error(ErrorKind::InvalidSymbol, "'" + name + "' names a square root");
      return it->second;
    }
    Var v = Var(syms_.size());
    syms_.push_back({name, SymbolKind::Parameter, Poly()});
    by_name_[name] = v;
    return v;
  }

  std::optional<Var> lookup(const std::string& name) const {
    std::shared_lock lock(mu_);
    auto it = by_name_.find(name);
    if (it == by_name_.end()) return std::nullopt;
    return it->second;
  }

  // one symbol per normalized radicand
  Var square_root(const Poly& radicand) {
    std::string key = radicand.to_string();
    std::unique_lock lock(mu_);
    auto it = by_radicand_.find(key);
    if (it != by_radicand_.end()) return it->second;
    Var v = Var(syms_.size());
    std::string name = "sqrt(" + key + ")";
    syms_.push_back({name, SymbolKind::SquareRoot, radicand});
    by_name_[name] = v;
    by_radicand_[key] = v;
    any_sqrt_.store(true);
    return v;
  }

  const SymbolInfo& info(Var v) const {
    std::shared_lock lock(mu_);
    return syms_.at(v);
  }
  bool is_sqrt(Var v) const {
    if (!any_sqrt_.load()) return false;
    return info(v).kind == SymbolKind::SquareRoot;
  }
  bool any_sqrt() const { return any_sqrt_.load(); }

 private:
  SymbolTable() = default;
  mutable std::shared_mutex mu_;
  std::deque<SymbolInfo> syms_;
  std::unordered_map<std::string, Var> by_name_;
  std::unordered_map<std::string, Var> by_radicand_;
  std::atomic<bool> any_sqrt_{false};
};

inline std::string symbol_name(Var v) { return SymbolTable::instance().info(v).name; }
inline Var param(const std::string& name) { return SymbolTable::instance().parameter(name); }

inline bool has_sqrt(const Poly& p) {
  if (!SymbolTable::instance().any_sqrt()) return false;
  for (Var v : p.vars())
    if (SymbolTable::instance().is_sqrt(v)) return true;
  return false;
}

namespace detail {
inline std::string rational_string(const mpq_class& c) { return c.get_str(); }
}  // namespace detail

inline std::string Poly::to_string() const {
  if (t_.empty()) return "0";
  std::string s;
  bool first = true;
  for (auto& [m, c] : t_) {
    mpq_class a = abs(c);
    if (first) {
      if (c < 0) s += "-";
    } else {
      s += c < 0 ? " - " : " + ";
    }
    first = false;
    bool need_star = false;
    if (m.is_one() || a != 1) {
      s += a.get_str();
      need_star = true;
    }
    for (auto& [v, e] : m.factors()) {
      if (need_star) s += "*";
      s += symbol_name(v);
      if (e > 1) s += "^" + std::to_string(e);
      need_star = true;
    }
  }
  return s;
}

}  // namespace ncas
