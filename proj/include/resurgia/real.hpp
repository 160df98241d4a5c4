#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/math/constants/constants.hpp>

#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>

namespace resurgia {

namespace mp = boost::multiprecision;

// Working-precision tiers. Everything numeric in the library is templated on
// the real type, so higher tiers are a recompile of the same code, not a
// separate code path.
using Real50  = mp::number<mp::cpp_bin_float<50>>;
using Real100 = mp::number<mp::cpp_bin_float<100>>;
using Real260 = mp::number<mp::cpp_bin_float<260>>;

// Make std:: math visible for unqualified calls in templates; multiprecision
// overloads are found by ADL.
using std::abs;
using std::atan2;
using std::ceil;
using std::cos;
using std::cosh;
using std::exp;
using std::expm1;
using std::floor;
using std::hypot;
using std::isfinite;
using std::isinf;
using std::isnan;
using std::log;
using std::log10;
using std::log1p;
using std::pow;
using std::sin;
using std::sinh;
using std::sqrt;
using std::tanh;

template <class Real>
inline Real pi_v() {
  return boost::math::constants::pi<Real>();
}

template <class Real>
inline int digits10_v() {
  return std::numeric_limits<Real>::digits10;
}

template <class Real>
inline Real eps_v() {
  return std::numeric_limits<Real>::epsilon();
}

template <class Real>
inline double to_double(const Real& x) {
  if constexpr (std::is_same_v<Real, double>) {
    return x;
  } else {
    return x.template convert_to<double>();
  }
}

template <class Real>
inline Real real_from_string(const std::string& s) {
  if constexpr (std::is_same_v<Real, double>) {
    return std::stod(s);
  } else {
    return Real(s);
  }
}

// Deterministic decimal rendering (fixed significant digits, round-trip safe
// at max_digits10).
template <class Real>
inline std::string real_to_string(const Real& x, int digits = 0) {
  if (digits <= 0) digits = std::numeric_limits<Real>::max_digits10;
  std::ostringstream os;
  os.precision(digits);
  os << x;
  return os.str();
}

enum class Precision { f64, d50, d100, d260 };

inline int precision_digits(Precision p) {
  switch (p) {
    case Precision::f64: return 16;
    case Precision::d50: return 50;
    case Precision::d100: return 100;
    case Precision::d260: return 260;
  }
  return 16;
}

// Smallest available tier with at least `digits` decimal digits.
inline Precision precision_for_digits(int digits) {
  if (digits <= 16) return Precision::f64;
  if (digits <= 50) return Precision::d50;
  if (digits <= 100) return Precision::d100;
  return Precision::d260;
}

// Default precision, overridable through RESURGIA_PRECISION (decimal digits).
inline Precision default_precision() {
  if (const char* env = std::getenv("RESURGIA_PRECISION")) {
    char* end = nullptr;
    long d = std::strtol(env, &end, 10);
    if (end != env && d > 0) return precision_for_digits(static_cast<int>(d));
    throw std::runtime_error("RESURGIA_PRECISION must be a positive digit count");
  }
  return Precision::f64;
}

// Invoke f with the real type selected at runtime. f must be a generic
// callable taking std::type_identity<Real>.
template <class F>
decltype(auto) with_precision(Precision p, F&& f) {
  switch (p) {
    case Precision::f64: return f(std::type_identity<double>{});
    case Precision::d50: return f(std::type_identity<Real50>{});
    case Precision::d100: return f(std::type_identity<Real100>{});
    case Precision::d260: return f(std::type_identity<Real260>{});
  }
  return f(std::type_identity<double>{});
}

}  // namespace resurgia
