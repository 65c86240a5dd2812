#pragma once

#include <map>

#include "trophom/puiseux.hpp"

namespace trophom {

// Sparse Laurent polynomial: integer exponent vectors over PuiseuxScalar.
struct LaurentPoly {
  size_t nvars = 0;
  std::map<ExpVec, PuiseuxScalar> terms;  // no zero coefficients

  LaurentPoly() = default;
  explicit LaurentPoly(size_t n) : nvars(n) {}

  bool is_zero() const { return terms.empty(); }

  void add_term(const ExpVec& e, const PuiseuxScalar& c) {
    if (c.is_zero()) return;
    auto it = terms.find(e);
    if (it == terms.end()) {
      terms.emplace(e, c);
    } else {
      it->second = it->second + c;
      if (it->second.is_zero()) terms.erase(it);
    }
  }

  static LaurentPoly constant(size_t n, const PuiseuxScalar& c) {
    LaurentPoly p(n);
    p.add_term(ExpVec(n, 0), c);
    return p;
  }
  static LaurentPoly monomial(size_t n, const ExpVec& e, const PuiseuxScalar& c) {
    LaurentPoly p(n);
    p.add_term(e, c);
    return p;
  }
  static LaurentPoly variable(size_t n, size_t i) {
    ExpVec e(n, 0);
    e[i] = 1;
    return monomial(n, e, PuiseuxScalar(1));
  }

  friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r = a;
    for (const auto& [e, c] : b.terms) r.add_term(e, c);
    return r;
  }
  friend LaurentPoly operator-(const LaurentPoly& a) {
    LaurentPoly r = a;
    for (auto& [e, c] : r.terms) c = -c;
    return r;
  }
  friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return a + (-b); }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r(a.nvars);
    for (const auto& [ea, ca] : a.terms)
      for (const auto& [eb, cb] : b.terms) {
        ExpVec e(a.nvars);
        for (size_t i = 0; i < a.nvars; ++i) e[i] = ea[i] + eb[i];
        r.add_term(e, ca * cb);
      }
    return r;
  }
  friend LaurentPoly operator*(const PuiseuxScalar& c, const LaurentPoly& a) {
    LaurentPoly r(a.nvars);
    for (const auto& [e, ce] : a.terms) r.add_term(e, c * ce);
    return r;
  }
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.nvars == b.nvars && a.terms == b.terms;
  }

  LaurentPoly pow(unsigned k) const {
    LaurentPoly r = constant(nvars, PuiseuxScalar(1));
    for (unsigned i = 0; i < k; ++i) r = r * (*this);
    return r;
  }

  // substitute variable i by the given polynomial (nonnegative powers of it
  // only); used by back-substitution of modification variables
  LaurentPoly substitute(size_t var, const LaurentPoly& value) const {
    LaurentPoly r(nvars);
    for (const auto& [e, c] : terms) {
      if (e[var] < 0) fail("Internal", "substitute into negative power");
      ExpVec e0 = e;
      e0[var] = 0;
      LaurentPoly part = LaurentPoly::monomial(nvars, e0, c) * value.pow(unsigned(e[var]));
      r = r + part;
    }
    return r;
  }

  std::complex<double> eval(double t0, const std::vector<std::complex<double>>& x) const {
    std::complex<double> v = 0;
    for (const auto& [e, c] : terms) {
      std::complex<double> m = c.eval(t0);
      for (size_t i = 0; i < nvars; ++i) {
        if (e[i] == 0) continue;
        m *= std::pow(x[i], double(e[i]));
      }
      v += m;
    }
    return v;
  }

  std::string str(const std::vector<std::string>& names = {}) const {
    if (terms.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [e, c] : terms) {
      if (!first) s += " + ";
      first = false;
      s += "(" + c.str() + ")";
      for (size_t i = 0; i < nvars; ++i) {
        if (e[i] == 0) continue;
        s += "*" + (i < names.size() ? names[i] : "x" + std::to_string(i + 1));
        if (e[i] != 1) s += "^" + std::to_string(e[i]);
      }
    }
    return s;
  }
};

// Min-plus shadow of a polynomial: one (exponent, valuation) pair per term.
struct TropicalForm {
  struct Term {
    ExpVec e;
    Rational val;
  };
  std::vector<Term> terms;
};

inline TropicalForm trop_form(const LaurentPoly& f) {
  if (f.is_zero()) fail("ZeroPolynomial", "tropicalizing the zero polynomial");
  TropicalForm F;
  F.terms.reserve(f.terms.size());
  for (const auto& [e, c] : f.terms) F.terms.push_back({e, *c.valuation()});
  return F;
}

struct TropEval {
  Rational value;
  std::vector<size_t> argmin;
};

inline TropEval trop_eval(const TropicalForm& F, const std::vector<Rational>& w) {
  TropEval r;
  for (size_t i = 0; i < F.terms.size(); ++i) {
    Rational v = F.terms[i].val + dot(F.terms[i].e, w);
    if (r.argmin.empty() || v < r.value) {
      r.value = v;
      r.argmin = {i};
    } else if (v == r.value) {
      r.argmin.push_back(i);
    }
  }
  return r;
}

// Sum over the argmin terms of the leading Gaussian-rational coefficients
// (residues of t^{-val} c_alpha), as a t-free LaurentPoly.
inline LaurentPoly initial_form(const LaurentPoly& f, const std::vector<Rational>& w) {
  if (f.is_zero()) fail("ZeroPolynomial", "initial form of the zero polynomial");
  std::optional<Rational> best;
  for (const auto& [e, c] : f.terms) {
    Rational v = *c.valuation() + dot(e, w);
    if (!best || v < *best) best = v;
  }
  LaurentPoly r(f.nvars);
  for (const auto& [e, c] : f.terms) {
    Rational v = *c.valuation() + dot(e, w);
    if (v == *best) r.add_term(e, PuiseuxScalar(c.leading_coeff()));
  }
  return r;
}

inline std::complex<double> evaluate_numeric(const LaurentPoly& f, double t0,
                                             const std::vector<std::complex<double>>& x) {
  return f.eval(t0, x);
}

}  // namespace trophom
