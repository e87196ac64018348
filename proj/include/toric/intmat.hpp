#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace toric {

using Int = mpz_class;

// Dense integer matrix, row-major.  All the eliminations below run on
// desk-sized matrices, so GMP entries cost nothing and intermediate
// swell is a non-issue.
class IntMat {
 public:
  IntMat() : rows_(0), cols_(0) {}
  IntMat(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, Int(0)) {}

  static IntMat identity(int n) {
    IntMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Int& at(int r, int c) { return a_[static_cast<size_t>(r) * cols_ + c]; }
  const Int& at(int r, int c) const { return a_[static_cast<size_t>(r) * cols_ + c]; }

  bool is_zero() const {
    for (const auto& x : a_)
      if (x != 0) return false;
    return true;
  }

  IntMat transpose() const {
    IntMat t(cols_, rows_);
    for (int r = 0; r < rows_; ++r)
      for (int c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
    return t;
  }

  std::vector<Int> col(int c) const {
    std::vector<Int> v(rows_);
    for (int r = 0; r < rows_; ++r) v[r] = at(r, c);
    return v;
  }

  friend IntMat operator*(const IntMat& a, const IntMat& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("IntMat: shape mismatch in product");
    IntMat c(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int k = 0; k < a.cols_; ++k) {
        if (a.at(i, k) == 0) continue;
        for (int j = 0; j < b.cols_; ++j) c.at(i, j) += a.at(i, k) * b.at(k, j);
      }
    return c;
  }

  friend IntMat operator+(const IntMat& a, const IntMat& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("IntMat: shape mismatch in sum");
    IntMat c(a.rows_, a.cols_);
    for (size_t i = 0; i < a.a_.size(); ++i) c.a_[i] = a.a_[i] + b.a_[i];
    return c;
  }

  friend IntMat operator-(const IntMat& a, const IntMat& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("IntMat: shape mismatch in difference");
    IntMat c(a.rows_, a.cols_);
    for (size_t i = 0; i < a.a_.size(); ++i) c.a_[i] = a.a_[i] - b.a_[i];
    return c;
  }

  friend bool operator==(const IntMat& a, const IntMat& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

  std::vector<Int> apply(const std::vector<Int>& x) const {
    if (static_cast<int>(x.size()) != cols_) throw std::invalid_argument("IntMat: vector length mismatch");
    std::vector<Int> y(rows_, Int(0));
    for (int r = 0; r < rows_; ++r)
      for (int c = 0; c < cols_; ++c) y[r] += at(r, c) * x[c];
    return y;
  }

  std::string str() const {
    std::string s;
    for (int r = 0; r < rows_; ++r) {
      s += "[";
      for (int c = 0; c < cols_; ++c) {
        s += at(r, c).get_str();
        if (c + 1 < cols_) s += " ";
      }
      s += "]";
      if (r + 1 < rows_) s += "\n";
    }
    return s;
  }

 private:
  int rows_, cols_;
  std::vector<Int> a_;
};

namespace detail {
inline void swap_rows(IntMat& m, int i, int j) {
  for (int c = 0; c < m.cols(); ++c) std::swap(m.at(i, c), m.at(j, c));
}
inline void swap_cols(IntMat& m, int i, int j) {
  for (int r = 0; r < m.rows(); ++r) std::swap(m.at(r, i), m.at(r, j));
}
// row_i -= q * row_j
inline void add_row(IntMat& m, int i, int j, const Int& q) {
  if (q == 0) return;
  for (int c = 0; c < m.cols(); ++c) m.at(i, c) -= q * m.at(j, c);
}
// col_i -= q * col_j
inline void add_col(IntMat& m, int i, int j, const Int& q) {
  if (q == 0) return;
  for (int r = 0; r < m.rows(); ++r) m.at(r, i) -= q * m.at(r, j);
}
inline void negate_row(IntMat& m, int i) {
  for (int c = 0; c < m.cols(); ++c) m.at(i, c) = -m.at(i, c);
}
inline void negate_col(IntMat& m, int i) {
  for (int r = 0; r < m.rows(); ++r) m.at(r, i) = -m.at(r, i);
}
}  // namespace detail

// Smith normal form: u * a * v = s with u, v unimodular and s diagonal,
// s_1 | s_2 | ... >= 0.  Pivot selection is by minimal absolute value in
// row-major scan order, which keeps the output deterministic.
struct SnfResult {
  IntMat s, u, v;
  int npivots = 0;
  std::vector<Int> diag() const {
    std::vector<Int> d;
    for (int i = 0; i < npivots; ++i) d.push_back(s.at(i, i));
    return d;
  }
};

inline SnfResult snf(const IntMat& a) {
  SnfResult r{a, IntMat::identity(a.rows()), IntMat::identity(a.cols()), 0};
  IntMat& s = r.s;
  IntMat& u = r.u;
  IntMat& v = r.v;
  const int n = a.rows(), m = a.cols();
  int t = 0;
  while (t < n && t < m) {
    // locate pivot
    int pi = -1, pj = -1;
    Int best;
    for (int i = t; i < n; ++i)
      for (int j = t; j < m; ++j) {
        if (s.at(i, j) == 0) continue;
        Int mag = abs(s.at(i, j));
        if (pi < 0 || mag < best) { pi = i; pj = j; best = mag; }
      }
    if (pi < 0) break;
    detail::swap_rows(s, t, pi);
    detail::swap_rows(u, t, pi);
    detail::swap_cols(s, t, pj);
    detail::swap_cols(v, t, pj);

    bool clean = false;
    while (!clean) {
      clean = true;
      for (int i = t + 1; i < n; ++i) {
        if (s.at(i, t) == 0) continue;
        Int q = s.at(i, t) / s.at(t, t);
        detail::add_row(s, i, t, q);
        detail::add_row(u, i, t, q);
        if (s.at(i, t) != 0) {  // remainder became the smaller pivot
          detail::swap_rows(s, t, i);
          detail::swap_rows(u, t, i);
          clean = false;
        }
      }
      for (int j = t + 1; j < m; ++j) {
        if (s.at(t, j) == 0) continue;
        Int q = s.at(t, j) / s.at(t, t);
        detail::add_col(s, j, t, q);
        detail::add_col(v, j, t, q);
        if (s.at(t, j) != 0) {
          detail::swap_cols(s, t, j);
          detail::swap_cols(v, t, j);
          clean = false;
        }
      }
    }
    // force divisibility of the remaining block by the pivot
    bool again = false;
    for (int i = t + 1; i < n && !again; ++i)
      for (int j = t + 1; j < m && !again; ++j)
        if (s.at(i, j) % s.at(t, t) != 0) {
          detail::add_row(s, t, i, Int(-1));
          detail::add_row(u, t, i, Int(-1));
          again = true;
        }
    if (again) continue;  // redo this pivot
    if (s.at(t, t) < 0) {
      detail::negate_row(s, t);
      detail::negate_row(u, t);
    }
    ++t;
  }
  r.npivots = t;
  return r;
}

inline int rank(const IntMat& a) { return snf(a).npivots; }

// Basis of the integer kernel lattice {x : a x = 0}, as matrix columns.
// The kernel of an integer matrix is saturated, so these columns generate
// every integer solution.
inline IntMat kernel_basis(const IntMat& a) {
  SnfResult r = snf(a);
  int k = a.cols() - r.npivots;
  IntMat ker(a.cols(), k);
  for (int j = 0; j < k; ++j)
    for (int i = 0; i < a.cols(); ++i) ker.at(i, j) = r.v.at(i, r.npivots + j);
  return ker;
}

// One integer solution of a x = b, if any.
inline std::optional<std::vector<Int>> solve(const IntMat& a, const std::vector<Int>& b) {
  SnfResult r = snf(a);
  std::vector<Int> c = r.u.apply(b);
  std::vector<Int> y(a.cols(), Int(0));
  for (int i = 0; i < r.npivots; ++i) {
    if (c[i] % r.s.at(i, i) != 0) return std::nullopt;
    y[i] = c[i] / r.s.at(i, i);
  }
  for (int i = r.npivots; i < a.rows(); ++i)
    if (c[i] != 0) return std::nullopt;
  return r.v.apply(y);
}

// Column echelon form over Z: h = a * u with u unimodular, pivot rows
// strictly increasing, pivots positive, zeros above each pivot.
struct ColEchelon {
  IntMat h, u;
  std::vector<int> pivot_rows;  // one per nonzero column of h
};

inline ColEchelon col_echelon(const IntMat& a) {
  ColEchelon r{a, IntMat::identity(a.cols()), {}};
  IntMat& h = r.h;
  IntMat& u = r.u;
  int t = 0;
  for (int row = 0; row < a.rows() && t < a.cols(); ++row) {
    // euclid across columns t.. on this row
    while (true) {
      int jmin = -1;
      Int best;
      for (int j = t; j < a.cols(); ++j) {
        if (h.at(row, j) == 0) continue;
        Int mag = abs(h.at(row, j));
        if (jmin < 0 || mag < best) { jmin = j; best = mag; }
      }
      if (jmin < 0) break;  // row all zero in the working block
      detail::swap_cols(h, t, jmin);
      detail::swap_cols(u, t, jmin);
      bool reduced = true;
      for (int j = t + 1; j < a.cols(); ++j) {
        if (h.at(row, j) == 0) continue;
        Int q = h.at(row, j) / h.at(row, t);
        detail::add_col(h, j, t, q);
        detail::add_col(u, j, t, q);
        if (h.at(row, j) != 0) reduced = false;
      }
      if (reduced) break;
    }
    if (h.at(row, t) != 0) {
      if (h.at(row, t) < 0) {
        detail::negate_col(h, t);
        detail::negate_col(u, t);
      }
      r.pivot_rows.push_back(row);
      ++t;
    }
  }
  // drop trailing zero columns
  return r;
}

}  // namespace toric
