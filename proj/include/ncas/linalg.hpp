#pragma once

// Dense Gauss-Jordan elimination over Scalars; every zero test goes through
// an Assumptions object and may raise CaseSplitRequired.

#include <optional>
#include <vector>

#include "ncas/assumptions.hpp"

namespace ncas {

class Matrix {
 public:
  Matrix() = default;
  Matrix(size_t r, size_t c) : rows_(r), cols_(c), a_(r * c) {}
  static Matrix from_rows(const std::vector<std::vector<Scalar>>& rows) {
    Matrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (size_t i = 0; i < m.rows_; ++i)
      for (size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i].at(j);
    return m;
  }

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  Scalar& operator()(size_t i, size_t j) { return a_[i * cols_ + j]; }
  const Scalar& operator()(size_t i, size_t j) const { return a_[i * cols_ + j]; }

  std::vector<Scalar> row(size_t i) const {
    return std::vector<Scalar>(a_.begin() + long(i * cols_), a_.begin() + long((i + 1) * cols_));
  }
  void append_row(const std::vector<Scalar>& r) {
    if (rows_ == 0 && cols_ == 0) cols_ = r.size();
    if (r.size() != cols_) throw Error(ErrorKind::ArityMismatch, "row length");
    a_.insert(a_.end(), r.begin(), r.end());
    ++rows_;
  }

 private:
  size_t rows_ = 0, cols_ = 0;
  std::vector<Scalar> a_;
};

struct Echelon {
  Matrix m;                   // reduced row echelon form, zero rows dropped
  std::vector<size_t> pivots;  // pivot column of each row
};

namespace detail {
inline size_t scalar_weight(const Scalar& s) { return s.num().size() + s.den().size(); }
}  // namespace detail

// reduced row echelon form; the first `pivot_cols` columns may hold pivots (all by default)
inline Echelon rref(Matrix m, const Assumptions& ctx, size_t pivot_cols = size_t(-1)) {
  const size_t R = m.rows(), C = m.cols();
  pivot_cols = std::min(pivot_cols, C);
  for (size_t i = 0; i < R; ++i)
    for (size_t j = 0; j < C; ++j) m(i, j) = ctx.reduce(m(i, j));
  std::vector<size_t> piv;
  size_t r = 0;
  for (size_t c = 0; c < pivot_cols && r < R; ++c) {
    std::optional<size_t> best;
    std::optional<size_t> unknown;
    for (size_t i = r; i < R; ++i) {
      Sign s = ctx.sign(m(i, c));
      if (s == Sign::Nonzero) {
        if (!best || detail::scalar_weight(m(i, c)) < detail::scalar_weight(m(*best, c))) best = i;
      } else if (s == Sign::Unknown) {
        if (!unknown || detail::scalar_weight(m(i, c)) < detail::scalar_weight(m(*unknown, c))) unknown = i;
      }
    }
    if (!best) {
      if (unknown) throw CaseSplitRequired(ctx.pivot_for(m(*unknown, c)));
      continue;
    }
    size_t b = *best;
    if (b != r)
      for (size_t j = 0; j < C; ++j) std::swap(m(r, j), m(b, j));
    Scalar inv = m(r, c).inverse();
    for (size_t j = c; j < C; ++j) m(r, j) = m(r, j) * inv;
    for (size_t i = 0; i < R; ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      Scalar f = m(i, c);
      for (size_t j = c; j < C; ++j)
        if (!m(r, j).is_zero()) m(i, j) = ctx.reduce(m(i, j) - f * m(r, j));
    }
    piv.push_back(c);
    ++r;
  }
  Matrix out(0, C);
  for (size_t i = 0; i < r; ++i) out.append_row(m.row(i));
  // rows past r must be zero only on pivot columns when pivot_cols < C
  for (size_t i = r; i < R; ++i) {
    bool zero = true;
    for (size_t j = 0; j < C; ++j)
      if (!ctx.decide_zero(m(i, j))) zero = false;
    if (!zero) out.append_row(m.row(i));
  }
  return {out, piv};
}

inline size_t rank(const Matrix& m, const Assumptions& ctx) { return rref(m, ctx).pivots.size(); }

// basis of {v : m v = 0}
inline std::vector<std::vector<Scalar>> nullspace(const Matrix& m, const Assumptions& ctx) {
  Echelon e = rref(m, ctx);
  const size_t C = m.cols();
  std::vector<bool> is_piv(C, false);
  for (size_t p : e.pivots) is_piv[p] = true;
  std::vector<std::vector<Scalar>> basis;
  for (size_t f = 0; f < C; ++f) {
    if (is_piv[f]) continue;
    std::vector<Scalar> v(C);
    v[f] = Scalar(1);
    for (size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = -e.m(i, f);
    basis.push_back(v);
  }
  return basis;
}

// one solution of m v = rhs, or nullopt when inconsistent
inline std::optional<std::vector<Scalar>> solve(const Matrix& m, const std::vector<Scalar>& rhs,
                                                const Assumptions& ctx) {
  Matrix aug(m.rows(), m.cols() + 1);
  for (size_t i = 0; i < m.rows(); ++i) {
    for (size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = rhs.at(i);
  }
  Echelon e = rref(aug, ctx, m.cols());
  std::vector<Scalar> v(m.cols());
  for (size_t i = 0; i < e.m.rows(); ++i) {
    if (i >= e.pivots.size()) return std::nullopt;  // 0 = nonzero
    v[e.pivots[i]] = e.m(i, m.cols());
  }
  return v;
}

}  // namespace ncas
