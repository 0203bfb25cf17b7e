#pragma once

// Homogeneous elements of k<x,y> = tensors in V^{(x)m}, words over {x, y}.

#include <array>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "ncas/linalg.hpp"

namespace ncas {

using Word = std::string;  // letters 'x' and 'y'

class NCPoly {
 public:
  explicit NCPoly(unsigned degree = 0) : deg_(degree) {}
  static NCPoly word(const Word& w, const Scalar& c = Scalar(1)) {
    NCPoly p(unsigned(w.size()));
    p.add(w, c);
    return p;
  }
  static NCPoly scalar(const Scalar& c) {
    NCPoly p(0);
    p.add("", c);
    return p;
  }

  unsigned degree() const { return deg_; }
  const std::map<Word, Scalar>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  Scalar coeff(const Word& w) const {
    auto it = t_.find(w);
    return it == t_.end() ? Scalar() : it->second;
  }

  void add(const Word& w, const Scalar& c) {
    if (w.size() != deg_) throw Error(ErrorKind::MixedDegree, "word " + w + " in degree " + std::to_string(deg_));
    if (c.is_zero()) return;
    auto [it, fresh] = t_.try_emplace(w, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) t_.erase(it);
    }
  }

  NCPoly operator-() const {
    NCPoly r = *this;
    for (auto& [w, c] : r.t_) c = -c;
    return r;
  }
  NCPoly& operator+=(const NCPoly& o) {
    check_degree(o);
    for (auto& [w, c] : o.t_) add(w, c);
    return *this;
  }
  NCPoly& operator-=(const NCPoly& o) {
    check_degree(o);
    for (auto& [w, c] : o.t_) add(w, -c);
    return *this;
  }
  friend NCPoly operator+(NCPoly a, const NCPoly& b) { return a += b; }
  friend NCPoly operator-(NCPoly a, const NCPoly& b) { return a -= b; }
  friend NCPoly operator*(const Scalar& s, const NCPoly& p) {
    NCPoly r(p.deg_);
    if (s.is_zero()) return r;
    for (auto& [w, c] : p.t_) r.add(w, s * c);
    return r;
  }
  // concatenation product
  friend NCPoly operator*(const NCPoly& a, const NCPoly& b) {
    NCPoly r(a.deg_ + b.deg_);
    for (auto& [wa, ca] : a.t_)
      for (auto& [wb, cb] : b.t_) r.add(wa + wb, ca * cb);
    return r;
  }

  bool operator==(const NCPoly& o) const { return deg_ == o.deg_ && t_ == o.t_; }
  bool operator!=(const NCPoly& o) const { return !(*this == o); }

  NCPoly map_coefficients(const std::function<Scalar(const Scalar&)>& f) const {
    NCPoly r(deg_);
    for (auto& [w, c] : t_) r.add(w, f(c));
    return r;
  }
  NCPoly reduce(const Assumptions& ctx) const {
    return map_coefficients([&](const Scalar& c) { return ctx.reduce(c); });
  }

  // coefficient vector in lexicographic word order (x < y)
  std::vector<Scalar> vector() const {
    std::vector<Scalar> v(size_t(1) << deg_);
    for (auto& [w, c] : t_) v[index_of(w)] = c;
    return v;
  }
  static NCPoly from_vector(unsigned degree, const std::vector<Scalar>& v) {
    NCPoly p(degree);
    for (size_t i = 0; i < v.size(); ++i) p.add(word_at(degree, i), v[i]);
    return p;
  }
  static size_t index_of(const Word& w) {
    size_t i = 0;
    for (char ch : w) i = i * 2 + (ch == 'y');
    return i;
  }
  static Word word_at(unsigned degree, size_t i) {
    Word w(degree, 'x');
    for (unsigned k = 0; k < degree; ++k)
      if (i >> (degree - 1 - k) & 1) w[k] = 'y';
    return w;
  }

  std::string to_string() const;

 private:
  void check_degree(const NCPoly& o) const {
    if (o.deg_ != deg_)
      throw Error(ErrorKind::MixedDegree, std::to_string(deg_) + " vs " + std::to_string(o.deg_));
  }
  unsigned deg_;
  std::map<Word, Scalar> t_;
};

inline NCPoly gen_x() { return NCPoly::word("x"); }
inline NCPoly gen_y() { return NCPoly::word("y"); }

// "x^2*y*x"
inline std::string word_string(const Word& w) {
  std::string s;
  for (size_t i = 0; i < w.size();) {
    size_t j = i;
    while (j < w.size() && w[j] == w[i]) ++j;
    if (!s.empty()) s += "*";
    s += w[i];
    if (j - i > 1) s += "^" + std::to_string(j - i);
    i = j;
  }
  return s;
}

inline std::string NCPoly::to_string() const {
  if (t_.empty()) return "0";
  std::string s;
  bool first = true;
  for (auto& [w, c] : t_) {
    // single-term coefficients print inline, others in parentheses
    bool simple = c.den() == Poly(1) && c.num().size() == 1;
    bool neg = simple && c.num().lead_coeff() < 0;
    Scalar a = neg ? -c : c;
    if (first)
      s += neg ? "-" : "";
    else
      s += neg ? " - " : " + ";
    first = false;
    std::string cs = simple ? a.to_string() : "(" + a.to_string() + ")";
    if (w.empty()) {
      s += cs;
    } else if (a.is_one()) {
      s += word_string(w);
    } else {
      s += cs + "*" + word_string(w);
    }
  }
  return s;
}

// Action of an invertible 2x2 matrix on V.  The matrix acts on points of P^1
// by matrix-times-column, and on the generators contragrediently:
// (theta . f)(p) = f(theta^{-1} p), i.e. with theta^{-1} = (a b; c d),
// x -> a x + b y and y -> c x + d y.
class LinearMap2 {
 public:
  LinearMap2() : m_{Scalar(1), Scalar(0), Scalar(0), Scalar(1)} {}
  LinearMap2(Scalar a, Scalar b, Scalar c, Scalar d) : m_{a, b, c, d} {}
  static LinearMap2 identity() { return {}; }
  static LinearMap2 diag(Scalar a, Scalar d) { return {a, Scalar(0), Scalar(0), d}; }

  const Scalar& a() const { return m_[0]; }
  const Scalar& b() const { return m_[1]; }
  const Scalar& c() const { return m_[2]; }
  const Scalar& d() const { return m_[3]; }
  const Scalar& operator()(int i, int j) const { return m_[i * 2 + j]; }

  Scalar det() const { return m_[0] * m_[3] - m_[1] * m_[2]; }
  LinearMap2 inverse() const {
    Scalar D = det();
    if (D.is_zero()) throw Error(ErrorKind::SingularMatrix, to_string());
    Scalar k = D.inverse();
    return {m_[3] * k, -m_[1] * k, -m_[2] * k, m_[0] * k};
  }
  LinearMap2 transpose() const { return {m_[0], m_[2], m_[1], m_[3]}; }
  friend LinearMap2 operator*(const LinearMap2& p, const LinearMap2& q) {
    return {p.a() * q.a() + p.b() * q.c(), p.a() * q.b() + p.b() * q.d(), p.c() * q.a() + p.d() * q.c(),
            p.c() * q.b() + p.d() * q.d()};
  }
  LinearMap2 pow(unsigned e) const {
    LinearMap2 r;
    for (unsigned i = 0; i < e; ++i) r = r * *this;
    return r;
  }
  LinearMap2 scaled(const Scalar& s) const { return {s * a(), s * b(), s * c(), s * d()}; }
  bool operator==(const LinearMap2& o) const { return m_ == o.m_; }
  bool operator!=(const LinearMap2& o) const { return !(*this == o); }

  LinearMap2 map(const std::function<Scalar(const Scalar&)>& f) const { return {f(a()), f(b()), f(c()), f(d())}; }

  // images of x and y as coefficient pairs over (x, y)
  std::array<std::array<Scalar, 2>, 2> generator_images() const {
    LinearMap2 v = inverse();
    return {{{v.a(), v.b()}, {v.c(), v.d()}}};
  }

  std::string to_string() const {
    return "[[" + a().to_string() + "," + b().to_string() + "],[" + c().to_string() + "," + d().to_string() + "]]";
  }

 private:
  std::array<Scalar, 4> m_;
};

// ---- operators ----

inline NCPoly rotate(const NCPoly& w) {
  if (w.degree() < 2) throw Error(ErrorKind::DegreeTooSmall, "rotate needs degree >= 2");
  NCPoly r(w.degree());
  for (auto& [word, c] : w.terms()) r.add(word.back() + word.substr(0, word.size() - 1), c);
  return r;
}

inline NCPoly left_derivative(const NCPoly& w, char v) {
  if (w.degree() < 1) throw Error(ErrorKind::DegreeTooSmall, "derivative needs degree >= 1");
  NCPoly r(w.degree() - 1);
  for (auto& [word, c] : w.terms())
    if (word.front() == v) r.add(word.substr(1), c);
  return r;
}

inline NCPoly right_derivative(const NCPoly& w, char v) {
  if (w.degree() < 1) throw Error(ErrorKind::DegreeTooSmall, "derivative needs degree >= 1");
  NCPoly r(w.degree() - 1);
  for (auto& [word, c] : w.terms())
    if (word.back() == v) r.add(word.substr(0, word.size() - 1), c);
  return r;
}

inline NCPoly slot_map(const NCPoly& w, const std::vector<LinearMap2>& maps) {
  if (maps.size() != w.degree())
    throw Error(ErrorKind::ArityMismatch, std::to_string(maps.size()) + " maps for degree " + std::to_string(w.degree()));
  std::vector<std::array<std::array<Scalar, 2>, 2>> img;
  for (auto& m : maps) img.push_back(m.generator_images());
  const unsigned m = w.degree();
  std::vector<Scalar> out(size_t(1) << m);
  for (auto& [word, c] : w.terms()) {
    // expand the product of the slot images
    std::vector<Scalar> acc{c};
    for (unsigned s = 0; s < m; ++s) {
      auto& g = img[s][word[s] == 'y'];
      std::vector<Scalar> next(acc.size() * 2);
      for (size_t i = 0; i < acc.size(); ++i) {
        if (acc[i].is_zero()) continue;
        if (!g[0].is_zero()) next[2 * i] = acc[i] * g[0];
        if (!g[1].is_zero()) next[2 * i + 1] = acc[i] * g[1];
      }
      acc.swap(next);
    }
    for (size_t i = 0; i < acc.size(); ++i)
      if (!acc[i].is_zero()) out[i] += acc[i];
  }
  return NCPoly::from_vector(m, out);
}

using Coords = std::array<Scalar, 2>;

inline Scalar evaluate_multilinear(const NCPoly& f, const std::vector<Coords>& pts) {
  if (pts.size() != f.degree()) throw Error(ErrorKind::ArityMismatch, "one point per slot");
  for (auto& p : pts)
    if (p[0].is_zero() && p[1].is_zero()) throw Error(ErrorKind::ZeroVector, "zero representative");
  Scalar r;
  for (auto& [word, c] : f.terms()) {
    Scalar t = c;
    for (size_t i = 0; i < word.size() && !t.is_zero(); ++i) t *= pts[i][word[i] == 'y'];
    r += t;
  }
  return r;
}

// ---- spans of homogeneous elements ----

inline Matrix coefficient_matrix(const std::vector<NCPoly>& ps) {
  Matrix m;
  for (auto& p : ps) m.append_row(p.vector());
  return m;
}

// reduced echelon basis of the span; canonical for equal spans
inline std::vector<NCPoly> span_basis(const std::vector<NCPoly>& ps, const Assumptions& ctx = {}) {
  if (ps.empty()) return {};
  unsigned d = ps[0].degree();
  Echelon e = rref(coefficient_matrix(ps), ctx);
  std::vector<NCPoly> out;
  for (size_t i = 0; i < e.m.rows(); ++i) out.push_back(NCPoly::from_vector(d, e.m.row(i)));
  return out;
}

inline bool same_span(const std::vector<NCPoly>& a, const std::vector<NCPoly>& b, const Assumptions& ctx = {}) {
  auto ea = span_basis(a, ctx), eb = span_basis(b, ctx);
  if (ea.size() != eb.size()) return false;
  for (size_t i = 0; i < ea.size(); ++i)
    if (ea[i].reduce(ctx) != eb[i].reduce(ctx)) return false;
  return true;
}

}  // namespace ncas
