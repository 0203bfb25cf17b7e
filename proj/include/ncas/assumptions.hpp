#pragma once

// Assumption sets (nonzero polynomials plus zero-branch bindings) and the
// case-split driver used by every parametric decision.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ncas/scalar.hpp"

namespace ncas {

// thrown when a decision depends on whether `pivot` vanishes
class CaseSplitRequired : public std::runtime_error {
 public:
  explicit CaseSplitRequired(Poly pivot)
      : std::runtime_error("CaseSplitRequired: " + pivot.to_string()), pivot_(std::move(pivot)) {}
  const Poly& pivot() const { return pivot_; }

 private:
  Poly pivot_;
};

enum class Sign { Zero, Nonzero, Unknown };

class Assumptions {
 public:
  Assumptions() = default;

  // variables the zero branch should solve for first
  void prefer(Var v) { preferred_.push_back(v); }
  const std::vector<Var>& preferred() const { return preferred_; }

  const std::map<Var, Scalar>& bindings() const { return bindings_; }
  const std::vector<Poly>& nonzero() const { return nonzero_; }
  const std::vector<std::string>& zero_log() const { return zero_log_; }

  Scalar reduce(const Scalar& s) const { return bindings_.empty() ? s : s.substitute(bindings_); }

  // p with every factor shared with a nonzero assumption divided out
  Poly strip(Poly p) const {
    if (p.is_zero()) return p;
    bool changed = true;
    while (changed && !p.is_constant()) {
      changed = false;
      for (auto& f : nonzero_) {
        Poly g = gcd(p, f);
        if (!g.is_constant()) {
          p = *divide_exact(p, g);
          changed = true;
        }
      }
    }
    return p.primitive();
  }

  Sign sign(const Scalar& s0) const {
    Scalar s = reduce(s0);
    if (s.is_zero()) return Sign::Zero;
    Poly n = s.norm_numerator();
    if (n.is_constant()) return Sign::Nonzero;
    return strip(n).is_constant() ? Sign::Nonzero : Sign::Unknown;
  }
  bool is_zero(const Scalar& s) const { return sign(s) == Sign::Zero; }
  bool known_nonzero(const Scalar& s) const { return sign(s) == Sign::Nonzero; }

  // throws CaseSplitRequired when s has no decided sign
  bool decide_zero(const Scalar& s) const {
    Sign g = sign(s);
    if (g == Sign::Unknown) throw CaseSplitRequired(pivot_for(s));
    return g == Sign::Zero;
  }
  Poly pivot_for(const Scalar& s) const { return strip(reduce(s).norm_numerator()); }

  // nullopt when inconsistent
  std::optional<Assumptions> with_nonzero(const Scalar& s) const {
    Scalar r = reduce(s);
    if (r.is_zero()) return std::nullopt;
    Poly p = strip(r.norm_numerator());
    Assumptions a = *this;
    if (!p.is_constant()) a.nonzero_.push_back(p);
    return a;
  }
  std::optional<Assumptions> with_nonzero(const Poly& p) const { return with_nonzero(Scalar(p)); }
  std::optional<Assumptions> with_nonzero_param(const std::string& name) const {
    return with_nonzero(Scalar::param(name));
  }

  // v := value, composed with existing bindings; nullopt when a nonzero assumption dies
  std::optional<Assumptions> with_binding(Var v, const Scalar& value) const {
    Assumptions a = *this;
    std::map<Var, Scalar> one{{v, a.reduce(value)}};
    try {
      for (auto& [w, e] : a.bindings_) e = e.substitute(one);
      a.bindings_[v] = one[v];
      std::vector<Poly> kept;
      for (auto& f : nonzero_) {
        Scalar r = Scalar(f).substitute(one);
        if (r.is_zero()) return std::nullopt;
        Poly n = r.norm_numerator();
        if (!n.is_constant()) kept.push_back(n.primitive());
      }
      a.nonzero_ = kept;
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::DenominatorVanishes) return std::nullopt;
      throw;
    }
    a.zero_log_.push_back(symbol_name(v) + " = " + a.bindings_[v].to_string());
    return a;
  }

  // branches covering p == 0; empty when p is a nonzero constant
  std::vector<Assumptions> with_zero(const Scalar& s) const {
    Scalar r = reduce(s);
    if (r.is_zero()) return {*this};
    Poly p = strip(r.norm_numerator());
    if (p.is_constant()) return {};
    auto& tab = SymbolTable::instance();
    std::vector<Var> order;
    for (Var v : preferred_)
      if (p.contains(v)) order.push_back(v);
    std::vector<Var> rest;
    for (Var v : p.vars())
      if (!tab.is_sqrt(v) && std::find(order.begin(), order.end(), v) == order.end()) rest.push_back(v);
    // later-declared symbols first
    std::sort(rest.rbegin(), rest.rend());
    const size_t npref = order.size();
    order.insert(order.end(), rest.begin(), rest.end());
    // preferred symbols one at a time in order, then the rest linear before quadratic
    std::vector<std::pair<unsigned, Var>> plan;
    for (size_t k = 0; k < npref; ++k) plan.push_back({1u, order[k]}), plan.push_back({2u, order[k]});
    for (unsigned want : {1u, 2u})
      for (size_t k = npref; k < order.size(); ++k) plan.push_back({want, order[k]});
    {
      for (auto [want, v] : plan) {
        if (p.degree_in(v) != want) continue;
        auto cs = p.coefficients_in(v);
        Scalar lead(cs[want]);
        if (!known_nonzero(lead)) continue;
        std::vector<Scalar> roots;
        if (want == 1) {
          roots.push_back(-Scalar(cs[0]) / lead);
        } else {
          Poly disc = cs[1] * cs[1] - Poly(4) * cs[2] * cs[0];
          if (has_sqrt(disc)) continue;
          Scalar b(cs[1]), two_a = Scalar(2) * lead;
          if (disc.is_zero()) {
            roots.push_back(-b / two_a);
          } else {
            Scalar sq = adjoin_sqrt(Scalar(disc));
            roots.push_back((-b + sq) / two_a);
            roots.push_back((-b - sq) / two_a);
          }
        }
        std::vector<Assumptions> out;
        for (auto& root : roots) {
          auto a = with_binding(v, root);
          if (a) {
            a->zero_log_.back() = "[" + p.to_string() + " = 0] " + a->zero_log_.back();
            out.push_back(*a);
          }
        }
        return out;
      }
    }
    // reducible pivot: split off the content in some symbol
    for (Var v : order) {
      auto cs = p.coefficients_in(v);
      Poly c;
      for (auto& k : cs)
        if (!k.is_zero()) c = c.is_zero() ? k : gcd(c, k);
      if (c.is_zero() || c.is_constant()) continue;
      std::vector<Assumptions> out = with_zero(Scalar(c));
      for (auto& a : with_zero(Scalar(*divide_exact(p, c)))) out.push_back(a);
      return out;
    }
    throw Error(ErrorKind::CaseSplitDepth, "cannot solve " + p.to_string() + " = 0 for a single symbol");
  }

  std::vector<std::string> describe() const {
    std::vector<std::string> out;
    for (auto& f : nonzero_) out.push_back(f.to_string() + " != 0");
    for (auto& z : zero_log_) out.push_back(z);
    return out;
  }

 private:
  std::vector<Poly> nonzero_;
  std::map<Var, Scalar> bindings_;
  std::vector<std::string> zero_log_;
  std::vector<Var> preferred_;
};

template <class R>
struct Branch {
  Assumptions assumptions;
  R value;
};

// runs f under a, splitting on every CaseSplitRequired up to max_depth nested pivots
template <class F>
auto explore(const Assumptions& a, F&& f, int max_depth = 3)
    -> std::vector<Branch<std::invoke_result_t<F&, const Assumptions&>>> {
  using R = std::invoke_result_t<F&, const Assumptions&>;
  std::vector<Branch<R>> out;
  std::function<void(const Assumptions&, int)> go = [&](const Assumptions& ctx, int depth) {
    try {
      out.push_back({ctx, f(ctx)});
    } catch (const CaseSplitRequired& e) {
      if (depth >= max_depth) throw;
      if (auto nz = ctx.with_nonzero(e.pivot())) go(*nz, depth + 1);
      for (auto& z : ctx.with_zero(Scalar(e.pivot()))) go(z, depth + 1);
    }
  };
  go(a, 0);
  return out;
}

// full evaluation at rational values
inline Scalar evaluate(const Scalar& s, const std::map<std::string, mpq_class>& values,
                       const Assumptions* ctx = nullptr) {
  auto& tab = SymbolTable::instance();
  std::map<Var, Scalar> b;
  for (auto& [name, q] : values) {
    auto v = tab.lookup(name);
    if (v) b[*v] = Scalar(q);
  }
  auto check_bound = [&](const std::set<Var>& vs) {
    for (Var v : vs) {
      if (tab.is_sqrt(v)) {
        for (Var w : tab.info(v).radicand.vars())
          if (!b.count(w)) throw Error(ErrorKind::UnboundParameter, symbol_name(w));
      } else if (!b.count(v)) {
        throw Error(ErrorKind::UnboundParameter, symbol_name(v));
      }
    }
  };
  check_bound(s.vars());
  if (ctx) {
    for (auto& f : ctx->nonzero()) {
      Scalar fv = Scalar(f).substitute(b);
      if (fv.is_zero()) throw Error(ErrorKind::AssumptionViolated, f.to_string() + " != 0");
    }
  }
  return s.substitute(b);
}

}  // namespace ncas
