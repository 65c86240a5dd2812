#pragma once

#include "trophom/binomial.hpp"
#include "trophom/engine.hpp"
#include "trophom/groebner.hpp"
#include "trophom/systems.hpp"

namespace trophom {

// Rescaled one-parameter system t^{-trop(f)(w)} f(t^w x) with the path
// parameter cleared to integer exponents via t = s^D.
struct Homotopy {
  std::vector<LaurentPoly> polys;  // coefficients are polynomials in s, integer exponents >= 0
  long denominator_clearing = 1;   // D
  std::vector<Rational> w;
  size_t nvars = 0;
  bool groebner_based = false;
};

inline Homotopy build_homotopy(const std::vector<LaurentPoly>& polys,
                               const std::vector<Rational>& w,
                               const std::vector<LaurentPoly>* target_check = nullptr) {
  Homotopy H;
  H.w = w;
  H.nvars = polys.empty() ? 0 : polys[0].nvars;

  // rescaled exponents q + e.w - trop(f)(w), then D = lcm of denominators
  std::vector<LaurentPoly> rescaled;
  Int D = 1;
  for (const auto& f : polys) {
    if (f.is_zero()) fail("ZeroPolynomial", "homotopy of the zero polynomial");
    std::optional<Rational> tropval;
    for (const auto& [e, c] : f.terms) {
      Rational v = *c.valuation() + dot(e, w);
      if (!tropval || v < *tropval) tropval = v;
    }
    LaurentPoly g(f.nvars);
    for (const auto& [e, c] : f.terms) {
      PuiseuxScalar c2;
      for (const auto& t : c.terms) {
        Rational q = t.exp + dot(e, w) - *tropval;
        if (q < 0) fail("Internal", "negative rescaled exponent");
        D = boost::multiprecision::lcm(D, den(q));
        c2.terms.push_back({q, t.coeff});
      }
      std::sort(c2.terms.begin(), c2.terms.end(),
                [](const auto& a, const auto& b) { return a.exp < b.exp; });
      g.add_term(e, c2);
    }
    rescaled.push_back(std::move(g));
  }
  H.denominator_clearing = D.convert_to<long>();
  for (auto& g : rescaled) {
    LaurentPoly h(g.nvars);
    for (const auto& [e, c] : g.terms) {
      PuiseuxScalar c2 = c;
      for (auto& t : c2.terms) t.exp *= H.denominator_clearing;
      h.add_term(e, c2);
    }
    H.polys.push_back(std::move(h));
  }

  // specializing the path parameter to 1 must reproduce the target exactly
  if (target_check) {
    if (target_check->size() != H.polys.size())
      fail("TargetMismatch", "homotopy size differs from target");
    for (size_t i = 0; i < H.polys.size(); ++i) {
      LaurentPoly at1(H.polys[i].nvars);
      for (const auto& [e, c] : H.polys[i].terms) {
        GaussianRational v(0);
        for (const auto& term : c.terms) v = v + term.coeff;
        at1.add_term(e, PuiseuxScalar(v));
      }
      if (!(at1 == (*target_check)[i]))
        fail("TargetMismatch", "homotopy at s=1 differs from the target");
    }
  }
  return H;
}

// evaluation of the homotopy at a fixed path-parameter value
inline std::vector<LaurentPoly> homotopy_at(const Homotopy& H, const GaussianRational& s) {
  std::vector<LaurentPoly> out;
  for (const auto& f : H.polys) {
    LaurentPoly g(f.nvars);
    for (const auto& [e, c] : f.terms) {
      GaussianRational v(0);
      for (const auto& t : c.terms) {
        GaussianRational p(1);
        long k = t.exp.convert_to<long>();
        for (long i = 0; i < k; ++i) p = p * s;
        v = v + t.coeff * p;
      }
      g.add_term(e, PuiseuxScalar(v));
    }
    out.push_back(std::move(g));
  }
  return out;
}

// Undo a modification inside a homotopy: in the rescaled coordinates the
// relation y = q(x) reads y' = t^{-w_y} q(t^{w_x} x'), so each substitution
// value picks up t^{e.w - w_var} per term (cleared through t = s^D).
inline std::vector<LaurentPoly> substitute_back_homotopy(const Homotopy& H,
                                                         const ConcreteSystem& sys) {
  long D = H.denominator_clearing;
  std::vector<LaurentPoly> polys = H.polys;
  for (auto it = sys.substitutions.rbegin(); it != sys.substitutions.rend(); ++it) {
    LaurentPoly value(it->value.nvars);
    for (const auto& [e, c] : it->value.terms) {
      Rational shift = (dot(e, H.w) - H.w[it->var]) * D;
      PuiseuxScalar c2 = c;
      for (auto& t : c2.terms) t.exp = t.exp * D + shift;
      value.add_term(e, c2);
    }
    for (auto& p : polys) p = p.substitute(it->var, value);
  }
  std::vector<LaurentPoly> out;
  for (const auto& p : polys) {
    LaurentPoly q(sys.nx);
    for (const auto& [e, c] : p.terms) {
      for (size_t i = sys.nx; i < e.size(); ++i)
        if (e[i] != 0) fail("Internal", "homotopy back-substitution left a modified variable");
      q.add_term(ExpVec(e.begin(), e.begin() + sys.nx), c);
    }
    out.push_back(std::move(q));
  }
  return out;
}

struct StartBundle {
  TropicalPoint point;
  std::vector<std::vector<std::complex<double>>> start_solutions;
  Int count = 0;
  std::vector<LaurentPoly> basis;  // the polynomials whose initials were solved
  bool groebner_based = false;
};

// Start data for one tropical point: initial forms of the basis system must
// be binomial; when the raw basis is not, linear blocks are eliminated into
// a tropical Groebner basis first (one-row blocks pass through).
inline StartBundle start_bundle(const ConcreteSystem& sys, const TropicalPoint& point) {
  StartBundle out;
  out.point = point;

  auto attempt = [&](const std::vector<LaurentPoly>& basis) -> bool {
    try {
      BinomialSystem B = initial_system(basis, point.w);
      BinomialSolutions sols = solve_binomial(B);
      out.start_solutions = sols.solutions;
      out.count = sols.count;
      out.basis = basis;
      return true;
    } catch (const Error& e) {
      if (e.kind == "NonBinomialInitial" || e.kind == "SingularExponentMatrix") return false;
      throw;
    }
  };

  bool ok = attempt(sys.polynomials);
  if (!ok) {
    bool has_linear = false;
    std::vector<LaurentPoly> basis;
    for (size_t b = 0; b < sys.blocks.size(); ++b) {
      if (sys.blocks[b].rows() == 1) {
        basis.push_back(sys.blocks[b].polynomials()[0]);
      } else {
        has_linear = true;
        GroebnerBasisW gb = tropical_groebner_linear(sys.blocks[b], point.w, b);
        for (auto& g : gb.elements) basis.push_back(std::move(g));
      }
    }
    if (!has_linear)
      fail("NonBinomialInitial",
           "initial ideal is not binomial and no linear block is available");
    ok = attempt(basis);
    out.groebner_based = true;
    if (!ok)
      fail("NonBinomialInitial",
           "Groebner-based initial system is still not binomial; redraw the valuation");
  }

  if (out.count != point.multiplicity)
    fail("MultiplicityMismatch",
         "start-solution count " + out.count.str() + " != tropical multiplicity " +
             point.multiplicity.str() + " (engine bug or non-generic valuation)");
  return out;
}

}  // namespace trophom
