#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace trophom {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

struct Error : std::runtime_error {
  std::string kind;
  Error(std::string k, const std::string& msg)
      : std::runtime_error(k + ": " + msg), kind(std::move(k)) {}
};

[[noreturn]] inline void fail(const std::string& kind, const std::string& msg) {
  throw Error(kind, msg);
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

inline Int num(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Int den(const Rational& q) { return boost::multiprecision::denominator(q); }

// Parses "p/q", integer, or decimal/scientific literals exactly.
inline Rational parse_rational(const std::string& s) {
  if (s.empty()) fail("SchemaError", "empty rational literal");
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    Int p(s.substr(0, slash));
    Int q(s.substr(slash + 1));
    if (q == 0) fail("SchemaError", "zero denominator in '" + s + "'");
    return Rational(p, q);
  }
  std::string digits;
  long exp10 = 0;
  size_t i = 0;
  bool neg = false;
  if (s[i] == '+' || s[i] == '-') neg = (s[i++] == '-');
  bool seen_digit = false, seen_dot = false;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (c >= '0' && c <= '9') {
      digits += c;
      seen_digit = true;
      if (seen_dot) --exp10;
    } else if (c == '.' && !seen_dot) {
      seen_dot = true;
    } else if ((c == 'e' || c == 'E') && seen_digit) {
      exp10 += std::stol(s.substr(i + 1));
      break;
    } else {
      fail("SchemaError", "bad rational literal '" + s + "'");
    }
  }
  if (!seen_digit) fail("SchemaError", "bad rational literal '" + s + "'");
  Int mant(digits.empty() ? "0" : digits);
  if (neg) mant = -mant;
  Rational r(mant);
  Int p10 = boost::multiprecision::pow(Int(10), static_cast<unsigned>(exp10 < 0 ? -exp10 : exp10));
  if (exp10 < 0) r /= Rational(p10);
  else r *= Rational(p10);
  return r;
}

inline std::string to_string(const Rational& q) {
  std::string s = num(q).str();
  if (den(q) != 1) s += "/" + den(q).str();
  return s;
}

inline Rational rational_lcm_den(const Rational& a, const Rational& b) {
  return Rational(boost::multiprecision::lcm(den(a), den(b)));
}

// Exact complex rationals; the coefficient field for all tropical-stage work.
struct GaussianRational {
  Rational re, im;

  GaussianRational() = default;
  GaussianRational(Rational r) : re(std::move(r)), im(0) {}
  GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
  GaussianRational(long r) : re(r), im(0) {}

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }

  friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }
  friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  GaussianRational inv() const {
    if (is_zero()) fail("DivisionByZero", "inverse of zero Gaussian rational");
    Rational n = re * re + im * im;
    return {re / n, -im / n};
  }
  friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
    return a * b.inv();
  }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

  std::complex<double> to_complex() const { return {to_double(re), to_double(im)}; }

  std::string str() const {
    if (im == 0) return to_string(re);
    std::string s = "(" + to_string(re);
    s += (im > 0 ? "+" : "-") + to_string(boost::multiprecision::abs(im)) + "i)";
    return s;
  }
};

using ExpVec = std::vector<int64_t>;

inline Rational dot(const ExpVec& a, const std::vector<Rational>& w) {
  Rational r = 0;
  for (size_t i = 0; i < a.size(); ++i) r += Rational(a[i]) * w[i];
  return r;
}

inline ExpVec sub(const ExpVec& a, const ExpVec& b) {
  ExpVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

}  // namespace trophom
