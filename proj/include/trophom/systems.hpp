#pragma once

#include "trophom/block.hpp"

namespace trophom {

// f_i = sum_j c_{i,j} a_j x^{alpha_j}: one scaling parameter per monomial
// column, shared down the column.
struct VerticalSystem {
  std::vector<std::vector<GaussianRational>> coeffs;  // n x m
  std::vector<ExpVec> exponents;                      // m exponent vectors in Z^n

  size_t nvars() const { return coeffs.size(); }
  size_t nparams() const { return exponents.size(); }

  void validate() const {
    if (coeffs.empty()) fail("DimensionError", "vertical system with no rows");
    for (const auto& row : coeffs) {
      if (row.size() != exponents.size())
        fail("DimensionError", "coefficient row length != exponent count");
      bool nonzero = false;
      for (const auto& c : row) nonzero |= !c.is_zero();
      if (!nonzero) fail("DimensionError", "vertical system row is identically zero");
    }
    for (const auto& e : exponents)
      if (e.size() != nvars()) fail("DimensionError", "exponent vector of wrong length");
  }
};

// f_i = sum_j c_{i,j} a_{i,j} q_j: one parameter per (row, support) pair.
struct HorizontalSystem {
  std::vector<std::vector<GaussianRational>> coeffs;  // n x m
  std::vector<LaurentPoly> support;                   // m constant-coefficient polys in x

  size_t nvars() const { return coeffs.size(); }
  size_t nsupport() const { return support.size(); }

  void validate() const {
    if (coeffs.empty()) fail("DimensionError", "horizontal system with no rows");
    for (const auto& row : coeffs)
      if (row.size() != support.size())
        fail("DimensionError", "coefficient row length != support count");
    for (const auto& q : support) {
      if (q.is_zero()) fail("DimensionError", "zero support polynomial");
      if (q.nvars != nvars()) fail("DimensionError", "support polynomial in wrong ring");
    }
  }
};

struct TransverseBase {
  std::vector<LaurentPoly> base;   // b_1..b_l in x
  std::vector<ExpVec> powers;      // m rows of beta_{j,k} (length l)
};

// var = value in the modified ambient ring; introduced in listed order, so
// back-substitution applies them in reverse.
struct Substitution {
  size_t var;
  LaurentPoly value;
};

struct ConcreteSystem {
  size_t nx = 0;       // original variables
  size_t ambient = 0;  // total variables after modification
  std::vector<std::string> names;
  std::vector<LaurentPoly> polynomials;      // over PuiseuxScalar, ambient ring
  std::vector<Block> blocks;                 // tropicalization units
  std::vector<Substitution> substitutions;   // provenance of introduced variables
  std::vector<LaurentPoly> target;           // original system at t = 1, in x only
  std::string provenance;
};

namespace detail {

inline void check_params(const std::vector<GaussianRational>& P) {
  for (const auto& p : P)
    if (p.is_zero()) fail("ZeroParameter", "target parameters must be nonzero");
}

inline PuiseuxScalar specialized_param(const GaussianRational& c, const GaussianRational& P,
                                       const Rational& v) {
  return PuiseuxScalar::monomial(v, c * P);
}

inline std::vector<std::string> default_names(size_t nx, size_t ny, size_t nz) {
  std::vector<std::string> names;
  for (size_t i = 0; i < nx; ++i) names.push_back("x" + std::to_string(i + 1));
  for (size_t i = 0; i < ny; ++i) names.push_back("y" + std::to_string(i + 1));
  for (size_t i = 0; i < nz; ++i) names.push_back("z" + std::to_string(i + 1));
  return names;
}

inline LaurentPoly widen(const LaurentPoly& f, size_t ambient) {
  LaurentPoly g(ambient);
  for (const auto& [e, c] : f.terms) {
    ExpVec e2 = e;
    e2.resize(ambient, 0);
    g.add_term(e2, c);
  }
  return g;
}

}  // namespace detail

// Q := t^v * P applied to a vertical system; the block decomposition is a
// single linear block with monomials S.
inline ConcreteSystem specialize(const VerticalSystem& V,
                                 const std::vector<GaussianRational>& P,
                                 const std::vector<Rational>& v) {
  V.validate();
  detail::check_params(P);
  if (P.size() != V.nparams() || v.size() != V.nparams())
    fail("DimensionError", "parameter/valuation count mismatch");
  ConcreteSystem sys;
  sys.nx = sys.ambient = V.nvars();
  sys.names = detail::default_names(sys.nx, 0, 0);
  sys.provenance = "vertical";
  std::vector<std::vector<PuiseuxScalar>> m(V.nvars());
  for (size_t i = 0; i < V.nvars(); ++i)
    for (size_t j = 0; j < V.nparams(); ++j)
      m[i].push_back(detail::specialized_param(V.coeffs[i][j], P[j], v[j]));
  sys.blocks.push_back(Block::make(m, V.exponents, sys.ambient));
  sys.polynomials = sys.blocks[0].polynomials();
  for (size_t i = 0; i < V.nvars(); ++i) {
    LaurentPoly f(sys.nx);
    for (size_t j = 0; j < V.nparams(); ++j)
      f.add_term(V.exponents[j], PuiseuxScalar(V.coeffs[i][j] * P[j]));
    sys.target.push_back(std::move(f));
  }
  return sys;
}

inline std::vector<Block> vertical_blocks(const VerticalSystem& V,
                                          const std::vector<GaussianRational>& P,
                                          const std::vector<Rational>& v) {
  return specialize(V, P, v).blocks;
}

// Expanded specialization of a horizontal system (x-space polynomials only).
// Parameters are indexed row-major: a_{i,j} -> P[i*m + j].
inline ConcreteSystem specialize(const HorizontalSystem& H,
                                 const std::vector<GaussianRational>& P,
                                 const std::vector<Rational>& v) {
  H.validate();
  detail::check_params(P);
  size_t n = H.nvars(), m = H.nsupport();
  if (P.size() != n * m || v.size() != n * m)
    fail("DimensionError", "parameter/valuation count mismatch");
  ConcreteSystem sys;
  sys.nx = sys.ambient = n;
  sys.names = detail::default_names(n, 0, 0);
  sys.provenance = "horizontal-expanded";
  for (size_t i = 0; i < n; ++i) {
    LaurentPoly f(n), ft(n);
    for (size_t j = 0; j < m; ++j) {
      if (H.coeffs[i][j].is_zero()) continue;
      f = f + PuiseuxScalar::monomial(v[i * m + j], H.coeffs[i][j] * P[i * m + j]) * H.support[j];
      ft = ft + PuiseuxScalar(H.coeffs[i][j] * P[i * m + j]) * H.support[j];
    }
    if (f.is_zero()) fail("DimensionError", "horizontal row specializes to zero");
    sys.polynomials.push_back(f);
    sys.target.push_back(ft);
    sys.blocks.push_back(Block::from_poly(f));
  }
  return sys;
}

// Leykin-Yu modification: \hat f_i = sum c_{i,j} a_{i,j} y_j (one-row blocks,
// independent parameters per row), \hat g_j = y_j - q_j.
inline ConcreteSystem horizontal_modification(const HorizontalSystem& H,
                                              const std::vector<GaussianRational>& P,
                                              const std::vector<Rational>& v) {
  H.validate();
  detail::check_params(P);
  size_t n = H.nvars(), m = H.nsupport();
  if (P.size() != n * m || v.size() != n * m)
    fail("DimensionError", "parameter/valuation count mismatch");
  ConcreteSystem sys;
  sys.nx = n;
  sys.ambient = n + m;
  sys.names = detail::default_names(n, m, 0);
  sys.provenance = "horizontal-modification";
  for (size_t i = 0; i < n; ++i) {
    LaurentPoly f(sys.ambient);
    for (size_t j = 0; j < m; ++j) {
      if (H.coeffs[i][j].is_zero()) continue;
      ExpVec e(sys.ambient, 0);
      e[n + j] = 1;
      f.add_term(e, detail::specialized_param(H.coeffs[i][j], P[i * m + j], v[i * m + j]));
    }
    if (f.is_zero()) fail("DimensionError", "modified row is zero");
    sys.polynomials.push_back(f);
    sys.blocks.push_back(Block::from_poly(f));
  }
  for (size_t j = 0; j < m; ++j) {
    LaurentPoly qj = detail::widen(H.support[j], sys.ambient);
    LaurentPoly g = LaurentPoly::variable(sys.ambient, n + j) - qj;
    sys.polynomials.push_back(g);
    sys.blocks.push_back(Block::from_poly(g));
    sys.substitutions.push_back({n + j, qj});
  }
  ConcreteSystem orig = specialize(H, P, std::vector<Rational>(n * m, Rational(0)));
  sys.target = orig.target;
  return sys;
}

// Two-stage modification through a tropically transverse base (Eq 5.3):
// \hat f_i linear in z, \hat g_j = z_j - y^{beta_j}, \hat h_k = y_k - b_k.
// With elide_monomials, base polynomials that are single monomials get no y
// variable and single-monomial support polynomials get no z variable.
inline ConcreteSystem two_stage_modification(const HorizontalSystem& H, const TransverseBase& B,
                                             const std::vector<GaussianRational>& P,
                                             const std::vector<Rational>& v,
                                             bool elide_monomials = false) {
  H.validate();
  detail::check_params(P);
  size_t n = H.nvars(), m = H.nsupport(), l = B.base.size();
  if (B.powers.size() != m) fail("DimensionError", "powers matrix must have one row per support");
  for (const auto& row : B.powers)
    if (row.size() != l) fail("DimensionError", "powers row length != base size");
  // base verification by expansion
  for (size_t j = 0; j < m; ++j) {
    LaurentPoly prod = LaurentPoly::constant(n, PuiseuxScalar(1));
    for (size_t k = 0; k < l; ++k) {
      if (B.powers[j][k] < 0) fail("BaseMismatch", "negative base powers are not supported");
      prod = prod * B.base[k].pow(unsigned(B.powers[j][k]));
    }
    if (!(prod == H.support[j]))
      fail("BaseMismatch", "support polynomial " + std::to_string(j) +
                               " is not the stated product of base polynomials");
  }

  std::vector<bool> y_elided(l, false), z_elided(m, false);
  if (elide_monomials) {
    for (size_t k = 0; k < l; ++k) y_elided[k] = B.base[k].terms.size() == 1;
    for (size_t j = 0; j < m; ++j) z_elided[j] = H.support[j].terms.size() == 1;
  }
  std::vector<size_t> y_index(l, SIZE_MAX), z_index(m, SIZE_MAX);
  size_t next = n;
  for (size_t k = 0; k < l; ++k)
    if (!y_elided[k]) y_index[k] = next++;
  for (size_t j = 0; j < m; ++j)
    if (!z_elided[j]) z_index[j] = next++;

  ConcreteSystem sys;
  sys.nx = n;
  sys.ambient = next;
  sys.names = detail::default_names(n, 0, 0);
  for (size_t k = 0; k < l; ++k)
    if (!y_elided[k]) sys.names.push_back("y" + std::to_string(k + 1));
  for (size_t j = 0; j < m; ++j)
    if (!z_elided[j]) sys.names.push_back("z" + std::to_string(j + 1));
  sys.provenance = "two-stage-modification";

  // monomial standing in for y_k (elided or not)
  auto y_monomial = [&](size_t k, int64_t power) {
    ExpVec e(sys.ambient, 0);
    if (y_elided[k]) {
      const ExpVec& be = B.base[k].terms.begin()->first;
      for (size_t i = 0; i < n; ++i) e[i] = be[i] * power;
      return std::pair<ExpVec, GaussianRational>(
          e, B.base[k].terms.begin()->second.constant_coeff());
    }
    e[y_index[k]] = power;
    return std::pair<ExpVec, GaussianRational>(e, GaussianRational(1));
  };
  auto z_monomial = [&](size_t j) {
    // z_j, or the product monomial over elided/non-elided y's when z_j is elided
    ExpVec e(sys.ambient, 0);
    GaussianRational coeff(1);
    if (!z_elided[j]) {
      e[z_index[j]] = 1;
      return std::pair<ExpVec, GaussianRational>(e, coeff);
    }
    for (size_t k = 0; k < l; ++k) {
      if (B.powers[j][k] == 0) continue;
      auto [ek, ck] = y_monomial(k, B.powers[j][k]);
      for (size_t i = 0; i < sys.ambient; ++i) e[i] += ek[i];
      GaussianRational cpow(1);
      for (int64_t p = 0; p < B.powers[j][k]; ++p) cpow = cpow * ck;
      coeff = coeff * cpow;
    }
    return std::pair<ExpVec, GaussianRational>(e, coeff);
  };

  for (size_t i = 0; i < n; ++i) {
    LaurentPoly f(sys.ambient);
    for (size_t j = 0; j < m; ++j) {
      if (H.coeffs[i][j].is_zero()) continue;
      auto [e, extra] = z_monomial(j);
      f.add_term(e, PuiseuxScalar::monomial(v[i * m + j], H.coeffs[i][j] * P[i * m + j] * extra));
    }
    if (f.is_zero()) fail("DimensionError", "modified row is zero");
    sys.polynomials.push_back(f);
    sys.blocks.push_back(Block::from_poly(f));
  }
  // h_k first in substitution order, then g_j (z depends on y)
  for (size_t k = 0; k < l; ++k) {
    if (y_elided[k]) continue;
    LaurentPoly h = LaurentPoly::variable(sys.ambient, y_index[k]) -
                    detail::widen(B.base[k], sys.ambient);
    sys.polynomials.push_back(h);
    sys.blocks.push_back(Block::from_poly(h));
    sys.substitutions.push_back({y_index[k], detail::widen(B.base[k], sys.ambient)});
  }
  for (size_t j = 0; j < m; ++j) {
    if (z_elided[j]) continue;
    LaurentPoly rhs(sys.ambient);
    ExpVec e(sys.ambient, 0);
    GaussianRational coeff(1);
    for (size_t k = 0; k < l; ++k) {
      if (B.powers[j][k] == 0) continue;
      auto [ek, ck] = y_monomial(k, B.powers[j][k]);
      for (size_t i = 0; i < sys.ambient; ++i) e[i] += ek[i];
      GaussianRational cpow(1);
      for (int64_t p = 0; p < B.powers[j][k]; ++p) cpow = cpow * ck;
      coeff = coeff * cpow;
    }
    rhs.add_term(e, PuiseuxScalar(coeff));
    LaurentPoly g = LaurentPoly::variable(sys.ambient, z_index[j]) - rhs;
    sys.polynomials.push_back(g);
    sys.blocks.push_back(Block::from_poly(g));
    sys.substitutions.push_back({z_index[j], rhs});
  }
  ConcreteSystem orig = specialize(H, P, std::vector<Rational>(n * m, Rational(0)));
  sys.target = orig.target;
  return sys;
}

// Relaxation (Defs 5.9/5.10): every support monomial gets a fresh parameter
// b_{j,k} with its own valuation; \hat g_j = y_j - sum q_{j,k} b_{j,k}
// t^{v_{j,k}} x^{alpha_k}.  `fresh` supplies the b values and valuations per
// support polynomial, aligned with the term order of H.support[j].
struct FreshAssignment {
  std::vector<std::vector<GaussianRational>> values;  // per support poly, per term
  std::vector<std::vector<Rational>> valuations;
};

inline ConcreteSystem relaxed_modification(const HorizontalSystem& H,
                                           const std::vector<GaussianRational>& P,
                                           const std::vector<Rational>& v,
                                           const FreshAssignment& fresh) {
  H.validate();
  detail::check_params(P);
  size_t n = H.nvars(), m = H.nsupport();
  if (P.size() != n * m || v.size() != n * m)
    fail("DimensionError", "parameter/valuation count mismatch");
  if (fresh.values.size() != m || fresh.valuations.size() != m)
    fail("DimensionError", "fresh assignment must cover every support polynomial");
  ConcreteSystem sys;
  sys.nx = n;
  sys.ambient = n + m;
  sys.names = detail::default_names(n, m, 0);
  sys.provenance = "relaxed-modification";
  for (size_t i = 0; i < n; ++i) {
    LaurentPoly f(sys.ambient);
    for (size_t j = 0; j < m; ++j) {
      if (H.coeffs[i][j].is_zero()) continue;
      ExpVec e(sys.ambient, 0);
      e[n + j] = 1;
      f.add_term(e, detail::specialized_param(H.coeffs[i][j], P[i * m + j], v[i * m + j]));
    }
    if (f.is_zero()) fail("DimensionError", "modified row is zero");
    sys.polynomials.push_back(f);
    sys.blocks.push_back(Block::from_poly(f));
  }
  for (size_t j = 0; j < m; ++j) {
    if (fresh.values[j].size() != H.support[j].terms.size() ||
        fresh.valuations[j].size() != H.support[j].terms.size())
      fail("DimensionError", "fresh assignment arity mismatch for support " + std::to_string(j));
    LaurentPoly q_sharp(sys.ambient);
    size_t k = 0;
    for (const auto& [e, c] : H.support[j].terms) {
      if (fresh.values[j][k].is_zero()) fail("ZeroParameter", "fresh parameter value is zero");
      ExpVec e2 = e;
      e2.resize(sys.ambient, 0);
      q_sharp.add_term(e2, PuiseuxScalar::monomial(fresh.valuations[j][k],
                                                   c.constant_coeff() * fresh.values[j][k]));
      ++k;
    }
    LaurentPoly g = LaurentPoly::variable(sys.ambient, n + j) - q_sharp;
    sys.polynomials.push_back(g);
    sys.blocks.push_back(Block::from_poly(g));
    sys.substitutions.push_back({n + j, q_sharp});
  }
  // target: the relaxed system at t = 1 coincides with the original exactly
  // when all fresh values are 1; in general it is the relaxed specialization
  ConcreteSystem sx;
  for (size_t i = 0; i < n; ++i) {
    LaurentPoly ft(n);
    for (size_t j = 0; j < m; ++j) {
      if (H.coeffs[i][j].is_zero()) continue;
      LaurentPoly qs(n);
      size_t k = 0;
      for (const auto& [e, c] : H.support[j].terms)
        qs.add_term(e, PuiseuxScalar(c.constant_coeff() * fresh.values[j][k++]));
      ft = ft + PuiseuxScalar(H.coeffs[i][j] * P[i * m + j]) * qs;
    }
    sys.target.push_back(ft);
  }
  return sys;
}

// Undo a modification: substitute the introduced variables back, in reverse
// introduction order, and restrict to the x ring.
inline LaurentPoly substitute_back(const LaurentPoly& f, const ConcreteSystem& sys) {
  LaurentPoly g = f;
  for (auto it = sys.substitutions.rbegin(); it != sys.substitutions.rend(); ++it)
    g = g.substitute(it->var, it->value);
  LaurentPoly out(sys.nx);
  for (const auto& [e, c] : g.terms) {
    for (size_t i = sys.nx; i < e.size(); ++i)
      if (e[i] != 0) fail("Internal", "back-substitution left a modified variable");
    ExpVec e2(e.begin(), e.begin() + sys.nx);
    out.add_term(e2, c);
  }
  return out;
}

// Project a solution vector in modified variables onto x, checking the
// substitution relations numerically.
inline std::vector<std::complex<double>> substitute_back_point(
    const std::vector<std::complex<double>>& pt, const ConcreteSystem& sys, double t0,
    double tol = 1e-6) {
  for (const auto& s : sys.substitutions) {
    std::complex<double> expect = s.value.eval(t0, pt);
    double scale = 1.0 + std::abs(expect);
    if (std::abs(pt[s.var] - expect) > tol * scale)
      fail("InconsistentSolution", "modified variable disagrees with its substitution");
  }
  return std::vector<std::complex<double>>(pt.begin(), pt.begin() + sys.nx);
}

}  // namespace trophom
