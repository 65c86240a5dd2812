#pragma once

#include "trophom/core.hpp"

namespace trophom {

// First-order infinitesimals a + b*eps, ordered lexicographically.  The
// stable-intersection engine runs over this field: tie systems are linear in
// w with rational coefficient rows, so eps*eps never arises.
struct EpsQ {
  Rational a, b;

  EpsQ() : a(0), b(0) {}
  EpsQ(Rational x) : a(std::move(x)), b(0) {}
  EpsQ(Rational x, Rational y) : a(std::move(x)), b(std::move(y)) {}

  friend EpsQ operator+(const EpsQ& x, const EpsQ& y) { return {x.a + y.a, x.b + y.b}; }
  friend EpsQ operator-(const EpsQ& x, const EpsQ& y) { return {x.a - y.a, x.b - y.b}; }
  friend EpsQ operator-(const EpsQ& x) { return {-x.a, -x.b}; }
  friend EpsQ operator*(const Rational& c, const EpsQ& x) { return {c * x.a, c * x.b}; }
  EpsQ div(const Rational& c) const { return {a / c, b / c}; }

  friend bool operator==(const EpsQ& x, const EpsQ& y) { return x.a == y.a && x.b == y.b; }
  friend bool operator!=(const EpsQ& x, const EpsQ& y) { return !(x == y); }
  friend bool operator<(const EpsQ& x, const EpsQ& y) {
    return x.a < y.a || (x.a == y.a && x.b < y.b);
  }
  friend bool operator<=(const EpsQ& x, const EpsQ& y) { return x < y || x == y; }
};

inline EpsQ dot_eps(const ExpVec& e, const std::vector<EpsQ>& w) {
  EpsQ r;
  for (size_t i = 0; i < e.size(); ++i) r = r + Rational(e[i]) * w[i];
  return r;
}

}  // namespace trophom
