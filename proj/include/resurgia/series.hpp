#pragma once

#include <string>
#include <vector>

#include "resurgia/bernoulli.hpp"
#include "resurgia/complex.hpp"
#include "resurgia/errors.hpp"
#include "resurgia/rational.hpp"

namespace resurgia {

namespace detail {

template <class T>
struct series_scalar {
  static T from_int(long n) { return T(n); }
};
template <class Real>
struct series_scalar<Complex<Real>> {
  static Complex<Real> from_int(long n) { return Complex<Real>(Real(n)); }
};
template <>
struct series_scalar<BigRational> {
  static BigRational from_int(long n) { return BigRational(n); }
};

}  // namespace detail

// Finite-order formal power series sum_{k<M} c[k] * var^k. The variable tag
// is carried along ("1/N", "1/x", "p", "u") and arithmetic never reads beyond
// the truncation order.
template <class T>
struct TruncatedSeries {
  std::string var;
  std::vector<T> c;

  TruncatedSeries() = default;
  TruncatedSeries(std::string v, size_t order)
      : var(std::move(v)), c(order, detail::series_scalar<T>::from_int(0)) {}
  TruncatedSeries(std::string v, std::vector<T> coeffs)
      : var(std::move(v)), c(std::move(coeffs)) {}

  size_t order() const { return c.size(); }
  const T& operator[](size_t k) const { return c[k]; }
  T& operator[](size_t k) { return c[k]; }

  static TruncatedSeries constant(std::string v, size_t order, T value) {
    TruncatedSeries s(std::move(v), order);
    if (order > 0) s.c[0] = std::move(value);
    return s;
  }
};

namespace detail {
inline void check_same_var(const std::string& a, const std::string& b) {
  if (a != b)
    fail(ErrorCode::invalid_argument,
         "series variable tags differ: '" + a + "' vs '" + b + "'");
}
}  // namespace detail

template <class T>
TruncatedSeries<T> operator+(const TruncatedSeries<T>& a, const TruncatedSeries<T>& b) {
  detail::check_same_var(a.var, b.var);
  size_t m = std::min(a.order(), b.order());
  TruncatedSeries<T> out(a.var, m);
  for (size_t k = 0; k < m; ++k) out.c[k] = a.c[k] + b.c[k];
  return out;
}

template <class T>
TruncatedSeries<T> operator-(const TruncatedSeries<T>& a, const TruncatedSeries<T>& b) {
  detail::check_same_var(a.var, b.var);
  size_t m = std::min(a.order(), b.order());
  TruncatedSeries<T> out(a.var, m);
  for (size_t k = 0; k < m; ++k) out.c[k] = a.c[k] - b.c[k];
  return out;
}

template <class T>
TruncatedSeries<T> operator-(const TruncatedSeries<T>& a) {
  TruncatedSeries<T> out(a.var, a.order());
  for (size_t k = 0; k < a.order(); ++k) out.c[k] = -a.c[k];
  return out;
}

template <class T>
TruncatedSeries<T> operator*(const T& s, const TruncatedSeries<T>& a) {
  TruncatedSeries<T> out(a.var, a.order());
  for (size_t k = 0; k < a.order(); ++k) out.c[k] = s * a.c[k];
  return out;
}

// Cauchy product, truncated at the weaker order.
template <class T>
TruncatedSeries<T> operator*(const TruncatedSeries<T>& a, const TruncatedSeries<T>& b) {
  detail::check_same_var(a.var, b.var);
  size_t m = std::min(a.order(), b.order());
  TruncatedSeries<T> out(a.var, m);
  for (size_t i = 0; i < m; ++i) {
    if (a.c[i] == detail::series_scalar<T>::from_int(0)) continue;
    for (size_t j = 0; i + j < m; ++j) out.c[i + j] += a.c[i] * b.c[j];
  }
  return out;
}

// Multiplicative inverse; needs a unit constant term.
template <class T>
TruncatedSeries<T> inverse(const TruncatedSeries<T>& a) {
  if (a.order() == 0 || a.c[0] == detail::series_scalar<T>::from_int(0))
    fail(ErrorCode::invalid_argument, "series inverse needs a nonzero constant term");
  TruncatedSeries<T> out(a.var, a.order());
  T inv0 = detail::series_scalar<T>::from_int(1) / a.c[0];
  out.c[0] = inv0;
  for (size_t n = 1; n < a.order(); ++n) {
    T acc = detail::series_scalar<T>::from_int(0);
    for (size_t k = 1; k <= n; ++k) acc += a.c[k] * out.c[n - k];
    out.c[n] = -inv0 * acc;
  }
  return out;
}

template <class T>
TruncatedSeries<T> operator/(const TruncatedSeries<T>& a, const TruncatedSeries<T>& b) {
  return a * inverse(b);
}

template <class T>
TruncatedSeries<T> pow_int(const TruncatedSeries<T>& a, long n) {
  TruncatedSeries<T> acc = TruncatedSeries<T>::constant(a.var, a.order(),
                                                        detail::series_scalar<T>::from_int(1));
  if (n == 0) return acc;
  TruncatedSeries<T> base = n < 0 ? inverse(a) : a;
  unsigned long e = n < 0 ? -static_cast<unsigned long>(n) : static_cast<unsigned long>(n);
  while (e > 0) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

// exp of a series with zero constant term (exact in any coefficient ring
// with small-integer division): n e_n = sum_{k=1..n} k a_k e_{n-k}.
template <class T>
TruncatedSeries<T> exp_series(const TruncatedSeries<T>& a) {
  if (a.order() == 0) return a;
  if (!(a.c[0] == detail::series_scalar<T>::from_int(0)))
    fail(ErrorCode::invalid_argument, "exp_series needs zero constant term");
  TruncatedSeries<T> out(a.var, a.order());
  out.c[0] = detail::series_scalar<T>::from_int(1);
  for (size_t n = 1; n < a.order(); ++n) {
    T acc = detail::series_scalar<T>::from_int(0);
    for (size_t k = 1; k <= n; ++k)
      acc += detail::series_scalar<T>::from_int(static_cast<long>(k)) * a.c[k] * out.c[n - k];
    out.c[n] = acc / detail::series_scalar<T>::from_int(static_cast<long>(n));
  }
  return out;
}

// log(1 + b) for b with zero constant term: n l_n = n b_n - sum k l_k b_{n-k}.
template <class T>
TruncatedSeries<T> log1p_series(const TruncatedSeries<T>& b) {
  if (b.order() == 0) return b;
  if (!(b.c[0] == detail::series_scalar<T>::from_int(0)))
    fail(ErrorCode::invalid_argument, "log1p_series needs zero constant term");
  TruncatedSeries<T> out(b.var, b.order());
  for (size_t n = 1; n < b.order(); ++n) {
    T acc = detail::series_scalar<T>::from_int(static_cast<long>(n)) * b.c[n];
    for (size_t k = 1; k < n; ++k)
      acc -= detail::series_scalar<T>::from_int(static_cast<long>(k)) * out.c[k] * b.c[n - k];
    out.c[n] = acc / detail::series_scalar<T>::from_int(static_cast<long>(n));
  }
  return out;
}

// Formal Borel transform: sum a_n var^{n+1} (slots 1..M-1, zero constant
// required) -> sum (a_n/n!) p^n. Order drops by one.
template <class T>
TruncatedSeries<T> borel_transform(const TruncatedSeries<T>& s) {
  if (s.var != "1/N" && s.var != "1/x")
    fail(ErrorCode::invalid_argument,
         "borel_transform expects a series in 1/N or 1/x, got '" + s.var + "'");
  if (s.order() == 0) fail(ErrorCode::invalid_argument, "borel_transform of empty series");
  if (!(s.c[0] == detail::series_scalar<T>::from_int(0)))
    fail(ErrorCode::invalid_argument,
         "borel_transform needs zero constant term (series must start at the 1/N slot)");
  TruncatedSeries<T> out("p", s.order() - 1);
  T fact = detail::series_scalar<T>::from_int(1);
  for (size_t n = 0; n + 1 < s.order(); ++n) {
    if (n > 0) fact = fact * detail::series_scalar<T>::from_int(static_cast<long>(n));
    out.c[n] = s.c[n + 1] / fact;
  }
  return out;
}

// Coefficientwise (Hadamard) product.
template <class T>
TruncatedSeries<T> hadamard_product(const TruncatedSeries<T>& a, const TruncatedSeries<T>& b) {
  detail::check_same_var(a.var, b.var);
  size_t m = std::min(a.order(), b.order());
  TruncatedSeries<T> out(a.var, m);
  for (size_t k = 0; k < m; ++k) out.c[k] = a.c[k] * b.c[k];
  return out;
}

// Evaluate a complex-coefficient series at a point (Horner).
template <class Real>
Complex<Real> evaluate_series(const TruncatedSeries<Complex<Real>>& s, const Complex<Real>& z) {
  Complex<Real> acc;
  for (size_t k = s.order(); k-- > 0;) acc = acc * z + s.c[k];
  return acc;
}

template <class Real>
TruncatedSeries<Complex<Real>> to_complex_series(const TruncatedSeries<BigRational>& s) {
  TruncatedSeries<Complex<Real>> out(s.var, s.order());
  for (size_t k = 0; k < s.order(); ++k) out.c[k] = Complex<Real>(to_real<Real>(s.c[k]));
  return out;
}

}  // namespace resurgia
