#pragma once

#include <algorithm>
#include <optional>

#include "trophom/core.hpp"

namespace trophom {

// Dense arbitrary-precision integer matrix, row-major.
struct IntMatrix {
  size_t rows = 0, cols = 0;
  std::vector<Int> a;

  IntMatrix() = default;
  IntMatrix(size_t r, size_t c) : rows(r), cols(c), a(r * c, Int(0)) {}

  static IntMatrix identity(size_t n) {
    IntMatrix m(n, n);
    for (size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  static IntMatrix from_rows(const std::vector<ExpVec>& rs) {
    IntMatrix m(rs.size(), rs.empty() ? 0 : rs[0].size());
    for (size_t i = 0; i < rs.size(); ++i)
      for (size_t j = 0; j < m.cols; ++j) m(i, j) = rs[i][j];
    return m;
  }

  Int& operator()(size_t i, size_t j) { return a[i * cols + j]; }
  const Int& operator()(size_t i, size_t j) const { return a[i * cols + j]; }

  friend IntMatrix operator*(const IntMatrix& x, const IntMatrix& y) {
    IntMatrix z(x.rows, y.cols);
    for (size_t i = 0; i < x.rows; ++i)
      for (size_t k = 0; k < x.cols; ++k) {
        if (x(i, k) == 0) continue;
        for (size_t j = 0; j < y.cols; ++j) z(i, j) += x(i, k) * y(k, j);
      }
    return z;
  }
  friend bool operator==(const IntMatrix& x, const IntMatrix& y) {
    return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
  }

  void swap_rows(size_t i, size_t j) {
    for (size_t k = 0; k < cols; ++k) std::swap((*this)(i, k), (*this)(j, k));
  }
  void swap_cols(size_t i, size_t j) {
    for (size_t k = 0; k < rows; ++k) std::swap((*this)(k, i), (*this)(k, j));
  }
  // row i -= q * row j
  void row_axpy(size_t i, size_t j, const Int& q) {
    for (size_t k = 0; k < cols; ++k) (*this)(i, k) -= q * (*this)(j, k);
  }
  void col_axpy(size_t i, size_t j, const Int& q) {
    for (size_t k = 0; k < rows; ++k) (*this)(k, i) -= q * (*this)(k, j);
  }
  void negate_row(size_t i) {
    for (size_t k = 0; k < cols; ++k) (*this)(i, k) = -(*this)(i, k);
  }
  void negate_col(size_t j) {
    for (size_t k = 0; k < rows; ++k) (*this)(k, j) = -(*this)(k, j);
  }
};

struct SmithResult {
  IntMatrix U, D, V;  // U*A*V = D
};

// Smith normal form with minimal-absolute-value pivoting to limit entry
// growth.  U, V are accumulated unimodular row/column transforms.
inline SmithResult smith_normal_form(const IntMatrix& A) {
  SmithResult s{IntMatrix::identity(A.rows), A, IntMatrix::identity(A.cols)};
  IntMatrix& D = s.D;
  size_t n = std::min(A.rows, A.cols);
  for (size_t t = 0; t < n; ++t) {
    // pivot: minimal nonzero |entry| in the trailing block
    size_t pi = t, pj = t;
    bool found = false;
    Int best;
    for (size_t i = t; i < D.rows; ++i)
      for (size_t j = t; j < D.cols; ++j) {
        if (D(i, j) == 0) continue;
        Int v = boost::multiprecision::abs(D(i, j));
        if (!found || v < best) {
          found = true;
          best = v;
          pi = i;
          pj = j;
        }
      }
    if (!found) break;
    if (pi != t) {
      D.swap_rows(t, pi);
      s.U.swap_rows(t, pi);
    }
    if (pj != t) {
      D.swap_cols(t, pj);
      s.V.swap_cols(t, pj);
    }
    for (;;) {
      bool clean = true;
      for (size_t i = t + 1; i < D.rows; ++i) {
        if (D(i, t) == 0) continue;
        Int q = D(i, t) / D(t, t);
        D.row_axpy(i, t, q);
        s.U.row_axpy(i, t, q);
        if (D(i, t) != 0) {  // remainder smaller than pivot: swap up
          D.swap_rows(t, i);
          s.U.swap_rows(t, i);
          clean = false;
        }
      }
      for (size_t j = t + 1; j < D.cols; ++j) {
        if (D(t, j) == 0) continue;
        Int q = D(t, j) / D(t, t);
        D.col_axpy(j, t, q);
        s.V.col_axpy(j, t, q);
        if (D(t, j) != 0) {
          D.swap_cols(t, j);
          s.V.swap_cols(t, j);
          clean = false;
        }
      }
      if (!clean) continue;
      // pivot must divide the whole trailing block
      bool divides = true;
      for (size_t i = t + 1; i < D.rows && divides; ++i)
        for (size_t j = t + 1; j < D.cols && divides; ++j)
          if (D(i, j) % D(t, t) != 0) {
            D.row_axpy(t, i, Int(-1));  // fold row i into the pivot row
            s.U.row_axpy(t, i, Int(-1));
            divides = false;
          }
      if (divides) break;
    }
    if (D(t, t) < 0) {
      D.negate_row(t);
      s.U.negate_row(t);
    }
  }
  return s;
}

inline Int det(const IntMatrix& A) {
  if (A.rows != A.cols) fail("DimensionMismatch", "det of non-square matrix");
  // fraction-free Bareiss
  IntMatrix m = A;
  Int sign = 1, prev = 1;
  size_t n = A.rows;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      m.swap_rows(k, p);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j)
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
    prev = m(k, k);
  }
  return n == 0 ? Int(1) : sign * m(n - 1, n - 1);
}

// Columns form a basis of {x : A x = 0}; saturated since V is unimodular.
inline IntMatrix integer_kernel(const IntMatrix& A) {
  SmithResult s = smith_normal_form(A);
  size_t n = std::min(A.rows, A.cols);
  std::vector<size_t> zcols;
  for (size_t j = 0; j < A.cols; ++j)
    if (j >= n || s.D(j, j) == 0) zcols.push_back(j);
  IntMatrix K(A.cols, zcols.size());
  for (size_t c = 0; c < zcols.size(); ++c)
    for (size_t i = 0; i < A.cols; ++i) K(i, c) = s.V(i, zcols[c]);
  return K;
}

struct LatticeIndex {
  bool finite = false;
  Int value = 0;  // meaningful only when finite

  bool operator==(const LatticeIndex&) const = default;
};

inline LatticeIndex lattice_index_infinite() { return {false, 0}; }
inline LatticeIndex lattice_index_of(Int v) { return {true, std::move(v)}; }

// Index of the column lattice of `generators` inside Z^n (n = row count),
// i.e. the product of its invariant factors; INFINITE when rank < n.
inline LatticeIndex lattice_index(const IntMatrix& generators) {
  size_t n = generators.rows;
  SmithResult s = smith_normal_form(generators);
  Int prod = 1;
  size_t rank = 0;
  for (size_t i = 0; i < std::min(generators.rows, generators.cols); ++i)
    if (s.D(i, i) != 0) {
      ++rank;
      prod *= s.D(i, i);
    }
  if (rank < n) return lattice_index_infinite();
  return lattice_index_of(prod);
}

inline size_t int_rank(const IntMatrix& A) {
  SmithResult s = smith_normal_form(A);
  size_t r = 0;
  for (size_t i = 0; i < std::min(A.rows, A.cols); ++i)
    if (s.D(i, i) != 0) ++r;
  return r;
}

}  // namespace trophom
