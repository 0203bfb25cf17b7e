#pragma once

// Recursive-descent parser for noncommutative polynomials and 2x2 matrices.
//
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*' factor) | ('/' factor))*      divisor must be a scalar
//   factor := '-' factor | atom ['^' natural]
//   atom   := integer | ident | 'x' | 'y' | '(' expr ')'
//
// '^' binds to a generator, a parameter or a parenthesized scalar; (x*y)^2 is rejected.

#include <cctype>
#include <map>
#include <string>

#include "ncas/freealg.hpp"

namespace ncas {

class ParseError : public Error {
 public:
  ParseError(ErrorKind kind, size_t pos, const std::string& msg)
      : Error(kind, msg + " at position " + std::to_string(pos)), pos_(pos) {}
  size_t position() const { return pos_; }

 private:
  size_t pos_;
};

struct ParseOptions {
  bool declare_parameters = false;  // unknown identifiers become new parameters
};

namespace detail {

// mixed-degree intermediate value
using Mixed = std::map<Word, Scalar>;

inline bool is_scalar(const Mixed& m) {
  for (auto& [w, c] : m)
    if (!w.empty()) return false;
  return true;
}
inline Scalar scalar_of(const Mixed& m) {
  auto it = m.find("");
  return it == m.end() ? Scalar() : it->second;
}
inline void mixed_add(Mixed& a, const Mixed& b, bool negate) {
  for (auto& [w, c] : b) {
    Scalar& t = a[w];
    t = negate ? t - c : t + c;
    if (t.is_zero()) a.erase(w);
  }
}
inline Mixed mixed_mul(const Mixed& a, const Mixed& b) {
  Mixed r;
  for (auto& [wa, ca] : a)
    for (auto& [wb, cb] : b) {
      Scalar& t = r[wa + wb];
      t += ca * cb;
      if (t.is_zero()) r.erase(wa + wb);
    }
  return r;
}

class Parser {
 public:
  Parser(const std::string& s, ParseOptions o) : s_(s), opt_(o) {}

  Mixed parse_all() {
    Mixed m = expr();
    skip();
    if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
    return m;
  }

  void expect(char c) {
    skip();
    if (i_ >= s_.size() || s_[i_] != c) fail(std::string("expected '") + c + "'");
    ++i_;
  }
  bool accept(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }
  Mixed expr() {
    Mixed acc = term();
    while (true) {
      if (accept('+'))
        mixed_add(acc, term(), false);
      else if (accept('-'))
        mixed_add(acc, term(), true);
      else
        return acc;
    }
  }
  size_t pos() const { return i_; }
  void finish() {
    skip();
    if (i_ != s_.size()) fail("trailing input");
  }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(ErrorKind::SyntaxError, i_, msg); }

 private:
  void skip() {
    while (i_ < s_.size() && std::isspace((unsigned char)s_[i_])) ++i_;
  }

  Mixed term() {
    Mixed acc = factor();
    while (true) {
      if (accept('*')) {
        acc = mixed_mul(acc, factor());
      } else if (accept('/')) {
        size_t at = i_;
        Mixed d = factor();
        if (!is_scalar(d)) throw ParseError(ErrorKind::SyntaxError, at, "divisor must be a scalar");
        Scalar k = scalar_of(d);
        if (k.is_zero()) throw ParseError(ErrorKind::SyntaxError, at, "division by zero");
        acc = mixed_mul(acc, Mixed{{"", k.inverse()}});
      } else {
        skip();
        // juxtaposition
        if (i_ < s_.size() && (std::isalnum((unsigned char)s_[i_]) || s_[i_] == '(' || s_[i_] == '_'))
          fail("missing '*'");
        return acc;
      }
    }
  }

  Mixed factor() {
    if (accept('-')) {
      Mixed m = factor();
      for (auto& [w, c] : m) c = -c;
      return m;
    }
    bool generator = false, grouped = false;
    Mixed base = atom(generator, grouped);
    if (accept('^')) {
      skip();
      size_t at = i_;
      if (i_ >= s_.size() || !std::isdigit((unsigned char)s_[i_])) fail("expected exponent");
      unsigned long e = 0;
      while (i_ < s_.size() && std::isdigit((unsigned char)s_[i_])) {
        e = e * 10 + unsigned(s_[i_++] - '0');
        if (e > 64) throw ParseError(ErrorKind::SyntaxError, at, "exponent too large");
      }
      if (generator) {
        if (e == 0) throw ParseError(ErrorKind::SyntaxError, at, "zero exponent on a generator");
        Mixed r{{"", Scalar(1)}};
        for (unsigned long k = 0; k < e; ++k) r = mixed_mul(r, base);
        return r;
      }
      if (!is_scalar(base)) throw ParseError(ErrorKind::SyntaxError, at, "'^' on a non-scalar group");
      return Mixed{{"", scalar_of(base).pow(long(e))}};
    }
    return base;
  }

  Mixed atom(bool& generator, bool& grouped) {
    skip();
    if (i_ >= s_.size()) fail("unexpected end of input");
    char ch = s_[i_];
    if (ch == '(') {
      ++i_;
      Mixed m = expr();
      expect(')');
      grouped = true;
      return m;
    }
    if (std::isdigit((unsigned char)ch)) {
      mpz_class n;
      size_t st = i_;
      while (i_ < s_.size() && std::isdigit((unsigned char)s_[i_])) ++i_;
      n.set_str(s_.substr(st, i_ - st), 10);
      if (n == 0) return Mixed{};
      return Mixed{{"", Scalar(mpq_class(n))}};
    }
    if (std::isalpha((unsigned char)ch) || ch == '_') {
      size_t st = i_;
      while (i_ < s_.size() && (std::isalnum((unsigned char)s_[i_]) || s_[i_] == '_')) ++i_;
      std::string id = s_.substr(st, i_ - st);
      if (id == "x" || id == "y") {
        generator = true;
        return Mixed{{id, Scalar(1)}};
      }
      auto v = SymbolTable::instance().lookup(id);
      if (!v) {
        if (!opt_.declare_parameters) throw ParseError(ErrorKind::UnknownSymbol, st, "unknown symbol '" + id + "'");
        try {
          v = param(id);
        } catch (const Error& e) {
          throw ParseError(ErrorKind::UnknownSymbol, st, e.what());
        }
      }
      return Mixed{{"", Scalar::var(*v)}};
    }
    fail("unexpected '" + std::string(1, ch) + "'");
  }

  const std::string& s_;
  ParseOptions opt_;
  size_t i_ = 0;
};

inline NCPoly to_ncpoly(const Mixed& m, size_t pos) {
  if (m.empty()) return NCPoly(0);
  unsigned d = unsigned(m.begin()->first.size());
  for (auto& [w, c] : m)
    if (w.size() != d) throw ParseError(ErrorKind::MixedDegree, pos, "terms of different degree");
  NCPoly p(d);
  for (auto& [w, c] : m) p.add(w, c);
  return p;
}

}  // namespace detail

// the zero polynomial parses with degree 0; pass expected_degree to fix it
inline NCPoly parse_ncpoly(const std::string& text, ParseOptions opt = {}, int expected_degree = -1) {
  detail::Parser p(text, opt);
  detail::Mixed m = p.parse_all();
  if (m.empty() && expected_degree >= 0) return NCPoly(unsigned(expected_degree));
  NCPoly r = detail::to_ncpoly(m, 0);
  if (expected_degree >= 0 && r.degree() != unsigned(expected_degree))
    throw Error(ErrorKind::WrongDegree, "expected degree " + std::to_string(expected_degree));
  return r;
}

inline Scalar parse_scalar(const std::string& text, ParseOptions opt = {}) {
  detail::Parser p(text, opt);
  detail::Mixed m = p.parse_all();
  if (!detail::is_scalar(m)) throw ParseError(ErrorKind::NonScalarEntry, 0, "'" + text + "' is not a scalar");
  return detail::scalar_of(m);
}

inline LinearMap2 parse_matrix(const std::string& text, ParseOptions opt = {}) {
  detail::Parser p(text, opt);
  Scalar e[4];
  p.expect('[');
  for (int r = 0; r < 2; ++r) {
    if (r) p.expect(',');
    p.expect('[');
    for (int c = 0; c < 2; ++c) {
      if (c) p.expect(',');
      size_t at = p.pos();
      detail::Mixed m = p.expr();
      if (!detail::is_scalar(m)) throw ParseError(ErrorKind::NonScalarEntry, at, "matrix entry is not a scalar");
      e[r * 2 + c] = detail::scalar_of(m);
    }
    p.expect(']');
  }
  p.expect(']');
  p.finish();
  return {e[0], e[1], e[2], e[3]};
}

}  // namespace ncas
