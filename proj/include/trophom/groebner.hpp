#pragma once

#include "trophom/block.hpp"

namespace trophom {

struct GroebnerBasisW {
  std::vector<Rational> w;
  std::vector<LaurentPoly> elements;                   // in the block's ambient ring
  std::vector<std::vector<PuiseuxScalar>> transform;   // elements = transform * block rows
  size_t source_block = 0;
};

namespace detail {

inline Rational score_of(const PuiseuxScalar& entry, const ExpVec& mon,
                         const std::vector<Rational>& w) {
  return *entry.valuation() + dot(mon, w);
}

// divide a row (and its transform row) by the gcd of all rational
// coordinates, then normalize the sign of the leading coefficient
inline void normalize_row(std::vector<PuiseuxScalar>& row, std::vector<PuiseuxScalar>& trow) {
  Int g = 0;
  Int l = 1;
  for (const auto& e : row)
    for (const auto& t : e.terms) {
      g = boost::multiprecision::gcd(g, num(t.coeff.re));
      g = boost::multiprecision::gcd(g, num(t.coeff.im));
      l = boost::multiprecision::lcm(l, den(t.coeff.re));
      l = boost::multiprecision::lcm(l, den(t.coeff.im));
    }
  if (g == 0) return;
  GaussianRational lead(0);
  for (const auto& e : row) {
    if (e.is_zero()) continue;
    lead = e.terms[0].coeff;
    break;
  }
  Rational scale = Rational(l, g);
  if (lead.re < 0 || (lead.re == 0 && lead.im < 0)) scale = -scale;
  PuiseuxScalar s{GaussianRational(scale)};
  for (auto& e : row) e = e * s;
  for (auto& e : trow) e = e * s;
}

}  // namespace detail

// Tropical Groebner basis of a linear block by a single valuated Gaussian
// elimination on the Macaulay matrix (fraction-free).  Pivots minimize
// valuation(entry) + monomial . w, ties broken by lowest column index in
// the canonical (sorted) column order, then lowest row.  The returned
// elements have monomials substituted in, so their initial forms generate
// the initial ideal at w.
inline GroebnerBasisW tropical_groebner_linear(const Block& b, const std::vector<Rational>& w,
                                               size_t block_id = 0) {
  size_t r = b.rows(), s = b.cols();
  if (detail::puiseux_rank(b.matrix) < r)
    fail("RankDeficient", "block matrix is not of full row rank");
  std::vector<std::vector<PuiseuxScalar>> m = b.matrix;
  std::vector<std::vector<PuiseuxScalar>> T(r, std::vector<PuiseuxScalar>(r));
  for (size_t i = 0; i < r; ++i) T[i][i] = PuiseuxScalar(1);

  std::vector<bool> pivoted(r, false);
  std::vector<size_t> pivot_col(r, SIZE_MAX);
  for (size_t step = 0; step < r; ++step) {
    size_t pi = SIZE_MAX, pj = SIZE_MAX;
    std::optional<Rational> best;
    for (size_t j = 0; j < s; ++j)
      for (size_t i = 0; i < r; ++i) {
        if (pivoted[i] || m[i][j].is_zero()) continue;
        Rational sc = detail::score_of(m[i][j], b.monomials[j], w);
        if (!best || sc < *best) {
          best = sc;
          pi = i;
          pj = j;
        }
      }
    if (pi == SIZE_MAX) fail("RankDeficient", "elimination ran out of pivots");
    pivoted[pi] = true;
    pivot_col[pi] = pj;
    for (size_t i = 0; i < r; ++i) {
      if (i == pi || m[i][pj].is_zero()) continue;
      PuiseuxScalar f = m[i][pj];
      for (size_t j = 0; j < s; ++j) m[i][j] = m[i][j] * m[pi][pj] - f * m[pi][j];
      for (size_t j = 0; j < r; ++j) T[i][j] = T[i][j] * m[pi][pj] - f * T[pi][j];
      m[i][pj] = {};
    }
  }
  for (size_t i = 0; i < r; ++i) detail::normalize_row(m[i], T[i]);

  // certificate: each row's minimal score sits at its pivot column
  for (size_t i = 0; i < r; ++i) {
    Rational ps = detail::score_of(m[i][pivot_col[i]], b.monomials[pivot_col[i]], w);
    for (size_t j = 0; j < s; ++j) {
      if (m[i][j].is_zero()) continue;
      if (detail::score_of(m[i][j], b.monomials[j], w) < ps)
        fail("NonGenericValuation", "valuated elimination failed the echelon certificate");
    }
  }

  GroebnerBasisW gb;
  gb.w = w;
  gb.source_block = block_id;
  gb.transform = std::move(T);
  for (size_t i = 0; i < r; ++i) {
    LaurentPoly p(b.ambient);
    for (size_t j = 0; j < s; ++j) p.add_term(b.monomials[j], m[i][j]);
    gb.elements.push_back(std::move(p));
  }
  return gb;
}

}  // namespace trophom
