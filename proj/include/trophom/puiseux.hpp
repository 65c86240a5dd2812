#pragma once

#include <cmath>

#include "trophom/core.hpp"

namespace trophom {

// Finite sum of Gaussian-rational coefficients times rational powers of t.
// Terms are kept sorted by strictly increasing exponent with no zero
// coefficients; the empty sum is the zero scalar.
struct PuiseuxScalar {
  struct Term {
    Rational exp;
    GaussianRational coeff;
  };
  std::vector<Term> terms;

  PuiseuxScalar() = default;
  PuiseuxScalar(GaussianRational c) {
    if (!c.is_zero()) terms.push_back({Rational(0), std::move(c)});
  }
  PuiseuxScalar(long c) : PuiseuxScalar(GaussianRational(c)) {}
  static PuiseuxScalar monomial(Rational e, GaussianRational c) {
    PuiseuxScalar s;
    if (!c.is_zero()) s.terms.push_back({std::move(e), std::move(c)});
    return s;
  }
  static PuiseuxScalar t_power(Rational e) { return monomial(std::move(e), GaussianRational(1)); }

  bool is_zero() const { return terms.empty(); }
  bool is_monomial() const { return terms.size() == 1; }
  bool is_constant() const { return is_zero() || (is_monomial() && terms[0].exp == 0); }

  // lowest t-exponent; empty for the zero scalar (valuation +infinity)
  std::optional<Rational> valuation() const {
    if (terms.empty()) return std::nullopt;
    return terms.front().exp;
  }
  GaussianRational leading_coeff() const {
    return terms.empty() ? GaussianRational(0) : terms.front().coeff;
  }
  GaussianRational constant_coeff() const {
    for (const auto& t : terms)
      if (t.exp == 0) return t.coeff;
    return GaussianRational(0);
  }

  friend PuiseuxScalar operator+(const PuiseuxScalar& a, const PuiseuxScalar& b) {
    PuiseuxScalar r;
    size_t i = 0, j = 0;
    while (i < a.terms.size() || j < b.terms.size()) {
      if (j == b.terms.size() || (i < a.terms.size() && a.terms[i].exp < b.terms[j].exp)) {
        r.terms.push_back(a.terms[i++]);
      } else if (i == a.terms.size() || b.terms[j].exp < a.terms[i].exp) {
        r.terms.push_back(b.terms[j++]);
      } else {
        GaussianRational c = a.terms[i].coeff + b.terms[j].coeff;
        if (!c.is_zero()) r.terms.push_back({a.terms[i].exp, std::move(c)});
        ++i;
        ++j;
      }
    }
    return r;
  }
  friend PuiseuxScalar operator-(const PuiseuxScalar& a) {
    PuiseuxScalar r = a;
    for (auto& t : r.terms) t.coeff = -t.coeff;
    return r;
  }
  friend PuiseuxScalar operator-(const PuiseuxScalar& a, const PuiseuxScalar& b) {
    return a + (-b);
  }
  friend PuiseuxScalar operator*(const PuiseuxScalar& a, const PuiseuxScalar& b) {
    PuiseuxScalar r;
    for (const auto& ta : a.terms) {
      PuiseuxScalar part;
      part.terms.reserve(b.terms.size());
      for (const auto& tb : b.terms)
        part.terms.push_back({ta.exp + tb.exp, ta.coeff * tb.coeff});
      r = r + part;
    }
    return r;
  }
  friend bool operator==(const PuiseuxScalar& a, const PuiseuxScalar& b) {
    if (a.terms.size() != b.terms.size()) return false;
    for (size_t i = 0; i < a.terms.size(); ++i)
      if (a.terms[i].exp != b.terms[i].exp || !(a.terms[i].coeff == b.terms[i].coeff))
        return false;
    return true;
  }
  friend bool operator!=(const PuiseuxScalar& a, const PuiseuxScalar& b) { return !(a == b); }

  // division by a single-term scalar (elimination pivots only)
  PuiseuxScalar div_monomial(const PuiseuxScalar& d) const {
    if (d.is_zero()) fail("DivisionByZero", "Puiseux division by zero");
    if (!d.is_monomial()) fail("NonMonomialDivisor", "Puiseux scalar-div needs a 1-term divisor");
    PuiseuxScalar r;
    r.terms.reserve(terms.size());
    for (const auto& t : terms)
      r.terms.push_back({t.exp - d.terms[0].exp, t.coeff / d.terms[0].coeff});
    return r;
  }

  // exact quotient; exists by construction in Bareiss-style elimination
  PuiseuxScalar div_exact(const PuiseuxScalar& d) const {
    if (d.is_zero()) fail("DivisionByZero", "Puiseux division by zero");
    if (is_zero()) return {};
    // top exponents are multiplicative, bounding the quotient support
    Rational qmax = terms.back().exp - d.terms.back().exp;
    PuiseuxScalar rem = *this, q;
    while (!rem.is_zero()) {
      PuiseuxScalar::Term qt{rem.terms[0].exp - d.terms[0].exp,
                             rem.terms[0].coeff / d.terms[0].coeff};
      if (qt.exp > qmax) fail("DivisionByZero", "inexact Puiseux division");
      PuiseuxScalar qs;
      qs.terms.push_back(qt);
      q = q + qs;
      rem = rem - qs * d;
    }
    return q;
  }

  std::complex<double> eval(double t0) const {
    std::complex<double> v = 0;
    for (const auto& term : terms)
      v += term.coeff.to_complex() * std::pow(t0, to_double(term.exp));
    return v;
  }

  // restrict t to a nonnegative integer power: used after t = s^D clearing
  std::string str() const {
    if (terms.empty()) return "0";
    std::string s;
    for (size_t i = 0; i < terms.size(); ++i) {
      if (i) s += " + ";
      s += terms[i].coeff.str();
      if (terms[i].exp != 0) s += "*t^" + to_string(terms[i].exp);
    }
    return s;
  }
};

enum class PuiseuxOp { add, mul, neg, scalar_div };

inline PuiseuxScalar puiseux_arith(PuiseuxOp op, const PuiseuxScalar& a, const PuiseuxScalar& b) {
  switch (op) {
    case PuiseuxOp::add: return a + b;
    case PuiseuxOp::mul: return a * b;
    case PuiseuxOp::neg: return -a;
    case PuiseuxOp::scalar_div: return a.div_monomial(b);
  }
  fail("Internal", "bad PuiseuxOp");
}

inline std::optional<Rational> valuation(const PuiseuxScalar& a) { return a.valuation(); }

}  // namespace trophom
