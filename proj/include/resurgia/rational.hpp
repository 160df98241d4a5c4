#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "resurgia/complex.hpp"
#include "resurgia/errors.hpp"
#include "resurgia/real.hpp"

namespace resurgia {

// Exact arithmetic backing: arbitrary-size integers and always-reduced
// rationals (cpp_rational keeps gcd-reduced form with positive denominator,
// which is exactly the invariant the library relies on).
using BigInt = mp::cpp_int;
using BigRational = mp::cpp_rational;

inline BigInt numerator(const BigRational& q) { return mp::numerator(q); }
inline BigInt denominator(const BigRational& q) { return mp::denominator(q); }

inline BigInt factorial_big(unsigned n) {
  BigInt acc = 1;
  for (unsigned k = 2; k <= n; ++k) acc *= k;
  return acc;
}

inline BigInt binomial_big(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt acc = 1;
  for (unsigned j = 1; j <= k; ++j) {
    acc *= (n - k + j);
    acc /= j;
  }
  return acc;
}

template <class Real>
Real to_real(const BigInt& n) {
  if constexpr (std::is_same_v<Real, double>) {
    return n.convert_to<double>();
  } else {
    return Real(n);
  }
}

template <class Real>
Real to_real(const BigRational& q) {
  return to_real<Real>(numerator(q)) / to_real<Real>(denominator(q));
}

inline std::string to_string(const BigRational& q) {
  return q.str();
}

// Exact Gaussian rational a + b*i; the scalar type for polynomial extraction
// from expression trees.
struct GaussianRational {
  BigRational re{0};
  BigRational im{0};

  GaussianRational() = default;
  GaussianRational(BigRational r) : re(std::move(r)) {}
  GaussianRational(BigRational r, BigRational i) : re(std::move(r)), im(std::move(i)) {}

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }

  GaussianRational operator-() const { return {-re, -im}; }
  friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
    BigRational n2 = b.re * b.re + b.im * b.im;
    if (n2 == 0) fail(ErrorCode::domain, "Gaussian rational division by zero");
    return {(a.re * b.re + a.im * b.im) / n2, (a.im * b.re - a.re * b.im) / n2};
  }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }
};

template <class Real>
Complex<Real> to_complex(const GaussianRational& q) {
  return {to_real<Real>(q.re), to_real<Real>(q.im)};
}

}  // namespace resurgia
