#pragma once

#include <algorithm>
#include <functional>
#include <set>

#include "trophom/laurent.hpp"

namespace trophom {

// A linear-in-monomials subsystem: r polynomial rows sharing one list of s
// monomials.  A one-row block is a tropical hypersurface; a multi-row block
// is a tropical linear space pulled back along its monomial map.  Columns
// are kept in canonical order (exponent vectors sorted ascending) so that
// elimination tie-breaks are reproducible.
struct Block {
  std::vector<std::vector<PuiseuxScalar>> matrix;  // r x s
  std::vector<ExpVec> monomials;                   // length s, sorted
  size_t ambient = 0;

  size_t rows() const { return matrix.size(); }
  size_t cols() const { return monomials.size(); }

  static Block make(std::vector<std::vector<PuiseuxScalar>> m, std::vector<ExpVec> mons,
                    size_t ambient_dim) {
    Block b;
    b.ambient = ambient_dim;
    std::vector<size_t> order(mons.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](size_t x, size_t y) { return mons[x] < mons[y]; });
    b.monomials.reserve(mons.size());
    for (size_t j : order) b.monomials.push_back(mons[j]);
    b.matrix.resize(m.size());
    for (size_t i = 0; i < m.size(); ++i) {
      b.matrix[i].reserve(mons.size());
      for (size_t j : order) b.matrix[i].push_back(m[i][j]);
    }
    return b;
  }

  static Block from_poly(const LaurentPoly& f) {
    Block b;
    b.ambient = f.nvars;
    for (const auto& [e, c] : f.terms) {
      b.monomials.push_back(e);  // map order is already sorted
    }
    b.matrix.resize(1);
    for (const auto& [e, c] : f.terms) b.matrix[0].push_back(c);
    return b;
  }

  // rows x monomials, regenerated as polynomials
  std::vector<LaurentPoly> polynomials() const {
    std::vector<LaurentPoly> ps;
    for (const auto& row : matrix) {
      LaurentPoly p(ambient);
      for (size_t j = 0; j < cols(); ++j) p.add_term(monomials[j], row[j]);
      ps.push_back(std::move(p));
    }
    return ps;
  }
};

// Valuated circuit of a block: a minimal-support element of the row space,
// carried as a tropical form over the ambient space.  The tropical variety
// of the block is exactly the locus where every circuit's minimum is
// attained at least twice.
struct CircuitForm {
  size_t block_id = 0;
  std::vector<size_t> support;  // column indices
  TropicalForm form;            // exponents = block monomials, valuations of the coefficients
};

namespace detail {

// determinant over the Puiseux field, fraction-free (Bareiss)
inline PuiseuxScalar puiseux_det(std::vector<std::vector<PuiseuxScalar>> m) {
  size_t n = m.size();
  if (n == 0) return PuiseuxScalar(1);
  int sign = 1;
  PuiseuxScalar prev(1);
  for (size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      size_t p = k + 1;
      while (p < n && m[p][k].is_zero()) ++p;
      if (p == n) return {};
      std::swap(m[k], m[p]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j)
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]).div_exact(prev);
    prev = m[k][k];
  }
  PuiseuxScalar d = m[n - 1][n - 1];
  return sign < 0 ? -d : d;
}

inline size_t puiseux_rank(std::vector<std::vector<PuiseuxScalar>> m) {
  size_t rank = 0, rows = m.size();
  size_t cols = rows ? m[0].size() : 0;
  for (size_t c = 0; c < cols && rank < rows; ++c) {
    size_t p = rank;
    while (p < rows && m[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(m[rank], m[p]);
    for (size_t i = rank + 1; i < rows; ++i) {
      if (m[i][c].is_zero()) continue;
      for (size_t j = c + 1; j < cols; ++j)
        m[i][j] = m[i][j] * m[rank][c] - m[rank][j] * m[i][c];
      m[i][c] = {};
    }
    ++rank;
  }
  return rank;
}

inline void subsets_rec(size_t n, size_t k, size_t start, std::vector<size_t>& cur,
                        const std::function<void(const std::vector<size_t>&)>& fn) {
  if (cur.size() == k) {
    fn(cur);
    return;
  }
  for (size_t i = start; i + (k - cur.size()) <= n; ++i) {
    cur.push_back(i);
    subsets_rec(n, k, i + 1, cur, fn);
    cur.pop_back();
  }
}

}  // namespace detail

struct CircuitEnumeration {
  std::vector<CircuitForm> circuits;
  bool complete = true;
};

// Enumerates the valuated circuits of a block.  For each (r-1)-subset B of
// columns spanning a hyperplane of the column matroid, the row-space vector
// vanishing on B has coefficients det[A_B | A_j] (Cramer); its support is
// the complement of the hyperplane.  Blocks wider than max_cols are not
// exhausted; the enumeration is reported incomplete instead.
inline CircuitEnumeration circuits(const Block& b, size_t block_id = 0, size_t max_cols = 20) {
  size_t r = b.rows(), s = b.cols();
  for (size_t j = 0; j < s; ++j) {
    bool all_zero = true;
    for (size_t i = 0; i < r; ++i)
      if (!b.matrix[i][j].is_zero()) all_zero = false;
    if (all_zero) fail("DegenerateColumn", "block has a zero column (matroid loop)");
  }
  if (detail::puiseux_rank(b.matrix) < r)
    fail("RankDeficient", "block matrix is not of full row rank");

  CircuitEnumeration out;
  if (r > 1 && s > max_cols) {
    out.complete = false;
    return out;
  }
  if (r > 1) {  // also bound the subset count itself
    double count = 1;
    for (size_t i = 0; i < r - 1; ++i) count *= double(s - i) / double(i + 1);
    if (count > 20000.0) {
      out.complete = false;
      return out;
    }
  }

  std::set<std::vector<size_t>> seen;
  std::vector<size_t> cur;
  detail::subsets_rec(s, r - 1, 0, cur, [&](const std::vector<size_t>& B) {
    // coefficients of the row-space vector vanishing on B
    std::vector<PuiseuxScalar> coeff(s);
    std::vector<size_t> supp;
    for (size_t j = 0; j < s; ++j) {
      bool in_B = std::binary_search(B.begin(), B.end(), j);
      if (in_B) continue;
      std::vector<std::vector<PuiseuxScalar>> m(r);
      for (size_t i = 0; i < r; ++i) {
        for (size_t c : B) m[i].push_back(b.matrix[i][c]);
        m[i].push_back(b.matrix[i][j]);
      }
      coeff[j] = detail::puiseux_det(m);
      if (!coeff[j].is_zero()) supp.push_back(j);
    }
    if (supp.empty()) return;  // rank(A_B) < r-1
    if (!seen.insert(supp).second) return;
    CircuitForm c;
    c.block_id = block_id;
    c.support = supp;
    for (size_t j : supp) c.form.terms.push_back({b.monomials[j], *coeff[j].valuation()});
    if (c.form.terms.size() < 2)
      fail("NonGenericValuation", "circuit with a single term: block variety misses the torus");
    out.circuits.push_back(std::move(c));
  });
  return out;
}

}  // namespace trophom
