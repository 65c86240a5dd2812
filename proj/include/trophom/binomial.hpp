#pragma once

#include <complex>

#include "trophom/intlinalg.hpp"
#include "trophom/laurent.hpp"

namespace trophom {

// Square binomial system x^{u_k} = c_k with nonzero constants.
struct BinomialSystem {
  IntMatrix exponents;                 // n x n, rows u_k
  std::vector<GaussianRational> rhs;   // c_k
};

// Builds the normalized binomial system from initial forms with exactly two
// terms each: c x^a + d x^b  ->  x^{a-b} = -d/c.
inline BinomialSystem initial_system(const std::vector<LaurentPoly>& polys,
                                     const std::vector<Rational>& w) {
  if (polys.empty()) fail("DimensionError", "empty system");
  size_t n = polys[0].nvars;
  if (polys.size() != n)
    fail("NonBinomialInitial", "system is not square: " + std::to_string(polys.size()) +
                                   " polynomials in " + std::to_string(n) + " variables");
  BinomialSystem B;
  B.exponents = IntMatrix(n, n);
  for (size_t k = 0; k < polys.size(); ++k) {
    LaurentPoly in = initial_form(polys[k], w);
    if (in.terms.size() != 2)
      fail("NonBinomialInitial",
           "initial form of polynomial " + std::to_string(k) + " has " +
               std::to_string(in.terms.size()) + " terms; redraw the valuation or use a "
               "Groebner-basis start");
    auto it = in.terms.begin();
    const ExpVec& eb = it->first;
    GaussianRational d = it->second.constant_coeff();
    ++it;
    const ExpVec& ea = it->first;
    GaussianRational c = it->second.constant_coeff();
    for (size_t j = 0; j < n; ++j) B.exponents(k, j) = ea[j] - eb[j];
    B.rhs.push_back(-(d / c));
  }
  return B;
}

namespace detail {

inline std::complex<double> cpow_int(const std::complex<double>& z, const Int& e) {
  long n = e.convert_to<long>();
  if (n == 0) return {1.0, 0.0};
  if (std::abs(n) > 24) {  // exp/log form for large exponents
    std::complex<double> l = std::log(z);
    return std::exp(double(n) * l);
  }
  std::complex<double> r{1.0, 0.0};
  std::complex<double> base = n > 0 ? z : 1.0 / z;
  for (long i = 0; i < std::abs(n); ++i) r *= base;
  return r;
}

inline std::complex<double> monomial_map(const std::vector<std::complex<double>>& x,
                                         const IntMatrix& M, size_t row) {
  std::complex<double> v{1.0, 0.0};
  for (size_t j = 0; j < M.cols; ++j) v *= cpow_int(x[j], M(row, j));
  return v;
}

}  // namespace detail

struct BinomialSolutions {
  std::vector<std::vector<std::complex<double>>> solutions;
  Int count = 0;  // |det U|
};

// Solve via Smith normal form: with U A V = D, substitute x = phi_V(y) and
// solve y_k^{d_k} = phi_U(c)_k by principal roots times roots of unity.
inline BinomialSolutions solve_binomial(const BinomialSystem& B) {
  size_t n = B.exponents.rows;
  Int dU = det(B.exponents);
  if (dU == 0)
    fail("SingularExponentMatrix",
         "binomial exponent matrix is singular (positive-dimensional start system)");
  SmithResult s = smith_normal_form(B.exponents);

  std::vector<std::complex<double>> c(n);
  for (size_t i = 0; i < n; ++i) c[i] = B.rhs[i].to_complex();
  std::vector<std::complex<double>> ct(n);
  for (size_t k = 0; k < n; ++k) ct[k] = detail::monomial_map(c, s.U, k);

  std::vector<long> d(n);
  Int count = 1;
  for (size_t k = 0; k < n; ++k) {
    d[k] = s.D(k, k).convert_to<long>();
    count *= s.D(k, k);
  }

  BinomialSolutions out;
  out.count = count;
  std::vector<long> idx(n, 0);
  const double two_pi = 6.283185307179586476925;
  for (;;) {
    std::vector<std::complex<double>> y(n);
    for (size_t k = 0; k < n; ++k) {
      double mag = std::pow(std::abs(ct[k]), 1.0 / double(d[k]));
      double arg = std::arg(ct[k]) / double(d[k]) + two_pi * double(idx[k]) / double(d[k]);
      y[k] = std::polar(mag, arg);
    }
    std::vector<std::complex<double>> x(n);
    for (size_t i = 0; i < n; ++i) x[i] = detail::monomial_map(y, s.V, i);
    out.solutions.push_back(std::move(x));
    size_t k = 0;
    while (k < n && ++idx[k] == d[k]) idx[k++] = 0;
    if (k == n) break;
  }

  for (const auto& x : out.solutions)
    for (size_t k = 0; k < n; ++k) {
      std::complex<double> lhs = detail::monomial_map(x, B.exponents, k);
      std::complex<double> rhs = B.rhs[k].to_complex();
      if (std::abs(lhs - rhs) > 1e-12 * (1.0 + std::abs(rhs)) * 100)
        fail("SingularExponentMatrix", "binomial solution failed residual validation");
    }
  return out;
}

}  // namespace trophom
