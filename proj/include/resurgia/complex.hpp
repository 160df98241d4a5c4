#pragma once

#include <string>

#include "resurgia/errors.hpp"
#include "resurgia/real.hpp"

namespace resurgia {

// Minimal complex value type over an arbitrary real tier. std::complex is not
// specified for user-defined scalar types, and we want explicit control of
// the log/sqrt branch cuts anyway.
template <class Real>
struct Complex {
  Real re{};
  Real im{};

  Complex() = default;
  Complex(Real r) : re(std::move(r)) {}
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

  static Complex i() { return Complex(Real(0), Real(1)); }

  Complex operator-() const { return {-re, -im}; }

  Complex& operator+=(const Complex& o) { re += o.re; im += o.im; return *this; }
  Complex& operator-=(const Complex& o) { re -= o.re; im -= o.im; return *this; }
  Complex& operator*=(const Complex& o) {
    Real r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = r;
    return *this;
  }
  Complex& operator/=(const Complex& o) { *this = *this / o; return *this; }

  friend Complex operator+(Complex a, const Complex& b) { return a += b; }
  friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
  friend Complex operator*(Complex a, const Complex& b) { return a *= b; }

  // Smith's scaled division; avoids spurious overflow for extreme components.
  friend Complex operator/(const Complex& a, const Complex& b) {
    if (b.im == 0) {
      if (b.re == 0) fail(ErrorCode::domain, "complex division by zero");
      return {a.re / b.re, a.im / b.re};
    }
    if (abs(b.re) >= abs(b.im)) {
      Real r = b.im / b.re, d = b.re + b.im * r;
      return {(a.re + a.im * r) / d, (a.im - a.re * r) / d};
    }
    Real r = b.re / b.im, d = b.re * r + b.im;
    return {(a.re * r + a.im) / d, (a.im * r - a.re) / d};
  }

  friend bool operator==(const Complex& a, const Complex& b) {
    return a.re == b.re && a.im == b.im;
  }
};

template <class Real> Complex<Real> conj(const Complex<Real>& z) { return {z.re, -z.im}; }
template <class Real> Real norm2(const Complex<Real>& z) { return z.re * z.re + z.im * z.im; }
template <class Real> Real abs(const Complex<Real>& z) { return hypot(z.re, z.im); }
template <class Real> Real arg(const Complex<Real>& z) { return atan2(z.im, z.re); }

template <class Real>
bool is_finite(const Complex<Real>& z) {
  return !(isnan(z.re) || isnan(z.im) || isinf(z.re) || isinf(z.im));
}

template <class Real>
Complex<Real> polar(const Real& r, const Real& theta) {
  return {r * cos(theta), r * sin(theta)};
}

template <class Real>
Complex<Real> exp(const Complex<Real>& z) {
  Real m = exp(z.re);
  return {m * cos(z.im), m * sin(z.im)};
}

// Principal branch, cut along the negative real axis. Errors on the cut (and
// at 0) rather than picking a side silently; callers that want a side must
// perturb explicitly.
template <class Real>
Complex<Real> log(const Complex<Real>& z) {
  if (z.im == 0 && z.re <= 0)
    fail(ErrorCode::domain, "log evaluated on its branch cut");
  return {log(abs(z)), arg(z)};
}

template <class Real>
Complex<Real> sqrt(const Complex<Real>& z) {
  if (z.im == 0 && z.re < 0)
    fail(ErrorCode::domain, "sqrt evaluated on its branch cut");
  Real m = sqrt(abs(z)), a = arg(z) / 2;
  return polar(m, a);
}

template <class Real>
Complex<Real> sin(const Complex<Real>& z) {
  return {sin(z.re) * cosh(z.im), cos(z.re) * sinh(z.im)};
}

template <class Real>
Complex<Real> cos(const Complex<Real>& z) {
  return {cos(z.re) * cosh(z.im), -sin(z.re) * sinh(z.im)};
}

template <class Real>
Complex<Real> pow_int(Complex<Real> base, long n) {
  if (n == 0) return Complex<Real>(Real(1));
  if (n < 0) {
    if (base == Complex<Real>()) fail(ErrorCode::domain, "0 raised to a negative power");
    base = Complex<Real>(Real(1)) / base;
    n = -n;
  }
  Complex<Real> acc(Real(1));
  while (n > 0) {
    if (n & 1) acc *= base;
    base *= base;
    n >>= 1;
  }
  return acc;
}

// z^a with principal log; a real (used for algebraic germs u^alpha).
template <class Real>
Complex<Real> pow_principal(const Complex<Real>& z, const Real& a) {
  return exp(Complex<Real>(a) * log(z));
}

template <class Real>
std::string to_string(const Complex<Real>& z, int digits = 0) {
  return "(" + real_to_string(z.re, digits) + ", " + real_to_string(z.im, digits) + ")";
}

}  // namespace resurgia
