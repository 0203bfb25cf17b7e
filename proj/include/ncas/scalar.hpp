#pragma once

// Elements of Q(parameters)[sqrt symbols], stored as a reduced fraction num/den.
// den never contains square-root symbols; num has degree <= 1 in each of them.

#include <map>
#include <ostream>
#include <string>
#include <unordered_map>

#include "ncas/poly.hpp"

namespace ncas {

namespace detail {

// rewrite s^e as radicand^(e/2) * s^(e%2) for every square-root symbol s
inline Poly reduce_sqrt(const Poly& p) {
  auto& tab = SymbolTable::instance();
  if (!tab.any_sqrt()) return p;
  bool dirty = false;
  for (auto& [m, c] : p.terms())
    for (auto& [v, e] : m.factors())
      if (e > 1 && tab.is_sqrt(v)) dirty = true;
  if (!dirty) return p;
  Poly r;
  for (auto& [m, c] : p.terms()) {
    Monomial keep;
    Poly factor(c);
    for (auto& [v, e] : m.factors()) {
      if (e > 1 && tab.is_sqrt(v)) {
        factor *= tab.info(v).radicand.pow(e / 2);
        if (e % 2) keep = keep * Monomial::var(v);
      } else {
        keep = keep * Monomial::var(v, e);
      }
    }
    r += factor.times(keep);
  }
  return r;
}

inline Var first_sqrt_var(const Poly& p) {
  auto& tab = SymbolTable::instance();
  if (!tab.any_sqrt()) return Var(-1);
  for (Var v : p.vars())
    if (tab.is_sqrt(v)) return v;
  return Var(-1);
}

// p with s replaced by -s
inline Poly conjugate(const Poly& p, Var s) {
  Poly r;
  for (auto& [m, c] : p.terms()) r.add_term(m, m.degree_in(s) % 2 ? mpq_class(-c) : c);
  return r;
}

}  // namespace detail

class Scalar {
 public:
  Scalar() : num_(), den_(1) {}
  Scalar(long c) : num_(c), den_(1) {}
  Scalar(int c) : num_(long(c)), den_(1) {}
  Scalar(const mpq_class& c) : num_(c), den_(1) {}
  explicit Scalar(const Poly& p) : num_(detail::reduce_sqrt(p)), den_(1) {}

  static Scalar fraction(const Poly& n, const Poly& d) {
    if (d.is_zero()) throw Error(ErrorKind::DivisionByZero, "zero denominator");
    Scalar s;
    s.num_ = n;
    s.den_ = d;
    s.normalize();
    return s;
  }
  static Scalar var(Var v) { return Scalar(Poly::var(v)); }
  static Scalar param(const std::string& name) { return var(ncas::param(name)); }
  static Scalar rational(long p, long q) {
    mpq_class c(p, q);
    c.canonicalize();
    return Scalar(c);
  }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return den_ == Poly(1) && num_ == Poly(1); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  // rational value of a constant scalar
  mpq_class constant_value() const { return num_.constant_value() / den_.constant_value(); }
  bool is_rational() const { return is_constant(); }
  std::set<Var> vars() const {
    auto a = num_.vars();
    for (Var v : den_.vars()) a.insert(v);
    return a;
  }
  bool has_sqrt() const { return ncas::has_sqrt(num_); }

  Scalar operator-() const {
    Scalar r = *this;
    r.num_ = -r.num_;
    return r;
  }
  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_ == b.den_) return fraction(a.num_ + b.num_, a.den_);
    if (a.rational_num() && b.rational_num()) {
      // Henrici: gcd(t, den) = gcd(t, d) for reduced inputs
      Poly d = gcd(a.den_, b.den_);
      Poly ad = *divide_exact(a.den_, d), bd = *divide_exact(b.den_, d);
      Poly t = a.num_ * bd + b.num_ * ad;
      if (t.is_zero()) return Scalar();
      Poly den = a.den_ * bd;
      if (!d.is_constant()) {
        Poly g = gcd(t, d);
        if (!g.is_constant()) t = *divide_exact(t, g), den = *divide_exact(den, g);
      }
      return canonical(std::move(t), std::move(den));
    }
    return fraction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }
  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    if (a.is_zero() || b.is_zero()) return Scalar();
    if (a.den_.is_constant() && b.den_.is_constant()) {
      Scalar r;
      r.num_ = detail::reduce_sqrt(a.num_ * b.num_).scaled(1 / (a.den_.constant_value() * b.den_.constant_value()));
      return r;
    }
    if (a.rational_num() && b.rational_num()) {
      Poly an = a.num_, ad = a.den_, bn = b.num_, bd = b.den_;
      if (!bd.is_constant()) {
        Poly g = gcd(an, bd);
        if (!g.is_constant()) an = *divide_exact(an, g), bd = *divide_exact(bd, g);
      }
      if (!ad.is_constant()) {
        Poly g = gcd(bn, ad);
        if (!g.is_constant()) bn = *divide_exact(bn, g), ad = *divide_exact(ad, g);
      }
      return canonical(an * bn, ad * bd);
    }
    return fraction(a.num_ * b.num_, a.den_ * b.den_);
  }
  Scalar inverse() const {
    if (is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
    return fraction(den_, num_);
  }
  friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

  Scalar pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    Scalar r(1), b = *this;
    while (e) {
      if (e & 1) r *= b;
      e >>= 1;
      if (e) b *= b;
    }
    return r;
  }

  bool operator==(const Scalar& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  // simultaneous substitution of symbols by scalars
  Scalar substitute(const std::map<Var, Scalar>& b) const;

  // sqrt-free multiple of num whose vanishing locus equals that of num
  Poly norm_numerator() const {
    Poly n = num_;
    for (Var s = detail::first_sqrt_var(n); s != Var(-1); s = detail::first_sqrt_var(n))
      n = detail::reduce_sqrt(n * detail::conjugate(n, s));
    return n;
  }

  std::string to_string() const {
    if (den_ == Poly(1)) return num_.to_string();
    return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
  }

 private:
  bool rational_num() const { return !ncas::has_sqrt(num_); }
  // num/den already coprime; fix content and sign only
  static Scalar canonical(Poly n, Poly d) {
    Scalar s;
    mpq_class c = d.content();
    if (d.lead_coeff() < 0) c = -c;
    if (c != 1) {
      n = n.scaled(1 / c);
      d = d.scaled(1 / c);
    }
    s.num_ = std::move(n);
    s.den_ = std::move(d);
    return s;
  }
  void normalize() {
    num_ = detail::reduce_sqrt(num_);
    den_ = detail::reduce_sqrt(den_);
    for (Var s = detail::first_sqrt_var(den_); s != Var(-1); s = detail::first_sqrt_var(den_)) {
      Poly c = detail::conjugate(den_, s);
      num_ = detail::reduce_sqrt(num_ * c);
      den_ = detail::reduce_sqrt(den_ * c);
    }
    if (den_.is_zero()) throw Error(ErrorKind::DivisionByZero, "denominator reduces to zero");
    if (num_.is_zero()) {
      den_ = Poly(1);
      return;
    }
    if (!den_.is_constant()) {
      Poly g = gcd(num_, den_);
      if (!g.is_constant()) {
        num_ = *divide_exact(num_, g);
        den_ = *divide_exact(den_, g);
      }
    }
    mpq_class c = den_.content();
    if (den_.lead_coeff() < 0) c = -c;
    if (c != 1) {
      num_ = num_.scaled(1 / c);
      den_ = den_.scaled(1 / c);
    }
  }

  Poly num_, den_;
};

inline std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

// ---- square roots ----

namespace detail {

// largest k with k^2 | n for small prime factors; returns (k, n / k^2)
inline std::pair<mpz_class, mpz_class> split_square(mpz_class n) {
  mpz_class k = 1;
  if (mpz_perfect_square_p(n.get_mpz_t())) {
    mpz_sqrt(k.get_mpz_t(), n.get_mpz_t());
    return {k, 1};
  }
  for (unsigned long p = 2; p < 2000; ++p) {
    mpz_class pp = p * p;
    while (mpz_divisible_p(n.get_mpz_t(), pp.get_mpz_t())) {
      n /= pp;
      k *= p;
    }
  }
  return {k, n};
}

}  // namespace detail

// returns t with t^2 == r; perfect squares come back without a new symbol
inline Scalar adjoin_sqrt(const Scalar& r) {
  if (r.is_zero()) throw Error(ErrorKind::ZeroRadicand, "square root of zero");
  if (r.has_sqrt() || has_sqrt(r.den()))
    throw Error(ErrorKind::SqrtTowerTooDeep, "radicand contains a square root");
  // sqrt(n/d) = sqrt(n d) / d
  Poly R = r.num() * r.den();
  mpq_class c = R.content();
  if (R.lead_coeff() < 0) c = -c;
  Poly P = R.scaled(1 / c);  // integer-primitive, positive lead
  // pull squared monomial content out of P
  Monomial mono_content;
  bool first = true;
  for (auto& [m, k] : P.terms()) {
    if (first) {
      mono_content = m;
      first = false;
      continue;
    }
    Monomial g;
    for (auto& [v, e] : mono_content.factors()) {
      unsigned f = std::min(e, m.degree_in(v));
      if (f) g = g * Monomial::var(v, f);
    }
    mono_content = g;
  }
  Monomial half;
  for (auto& [v, e] : mono_content.factors())
    if (e / 2) half = half * Monomial::var(v, e / 2);
  Poly outside = Poly::term(half, 1);
  P = *divide_exact(P, outside * outside);
  // c = sign * cn / cd ;  sqrt(c) = sqrt(sign * cn * cd) / cd
  mpz_class cn = abs(c.get_num()), cd = c.get_den();
  auto [k, rest] = detail::split_square(mpz_class(cn * cd));
  mpq_class kq(k, cd);
  kq.canonicalize();
  Scalar factor = Scalar(kq) * Scalar(outside) / Scalar(r.den());
  bool negative = c < 0;
  if (auto s = poly_sqrt(P); s && rest == 1 && !negative) return factor * Scalar(*s);
  Poly radicand;
  if (auto s = poly_sqrt(P)) {
    factor *= Scalar(*s);
    radicand = Poly(mpq_class(negative ? -rest : rest));
  } else {
    radicand = P.scaled(mpq_class(negative ? -rest : rest));
  }
  if (radicand == Poly(1)) return factor;
  Var sv = SymbolTable::instance().square_root(radicand);
  return factor * Scalar::var(sv);
}

inline Scalar Scalar::substitute(const std::map<Var, Scalar>& b) const {
  if (b.empty()) return *this;
  auto& tab = SymbolTable::instance();
  std::map<Var, Scalar> values;
  auto value_of = [&](Var v) -> Scalar {
    auto it = values.find(v);
    if (it != values.end()) return it->second;
    Scalar val;
    if (auto jt = b.find(v); jt != b.end()) {
      val = jt->second;
    } else if (tab.is_sqrt(v)) {
      const Poly& rad = tab.info(v).radicand;
      bool touched = false;
      for (Var w : rad.vars())
        if (b.count(w)) touched = true;
      val = touched ? adjoin_sqrt(Scalar(rad).substitute(b)) : Scalar::var(v);
    } else {
      val = Scalar::var(v);
    }
    values.emplace(v, val);
    return val;
  };
  auto eval = [&](const Poly& p) {
    Scalar acc;
    for (auto& [m, c] : p.terms()) {
      Scalar t(c);
      for (auto& [v, e] : m.factors()) t *= value_of(v).pow(e);
      acc += t;
    }
    return acc;
  };
  Scalar n = eval(num_), d = eval(den_);
  if (d.is_zero()) throw Error(ErrorKind::DenominatorVanishes, "denominator " + den_.to_string() + " vanishes");
  return n / d;
}

}  // namespace ncas
