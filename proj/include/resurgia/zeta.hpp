#pragma once

#include <mutex>
#include <unordered_map>
#include <vector>

#include "resurgia/bernoulli.hpp"
#include "resurgia/real.hpp"

namespace resurgia {

// Hurwitz zeta(s, a) = sum_{k>=0} (a+k)^{-s} for integer s >= 2, real a >= 1,
// by Euler-MacLaurin with exact Bernoulli numbers:
//   sum_{k<K}(a+k)^{-s} + (a+K)^{1-s}/(s-1) + (a+K)^{-s}/2
//   + sum_{r>=1} B_{2r}/(2r)! (s)_{2r-1} (a+K)^{-s-2r+1}
// with remainder bounded by the first omitted term (monotone kernel, real
// s > 0). Used for the certified tails of the kernel series.
template <class Real>
Real hurwitz_zeta_int(unsigned s, const Real& a, const Real& abs_tol) {
  if (s < 2) fail(ErrorCode::invalid_argument, "hurwitz_zeta_int needs s >= 2");
  if (!(a >= 1)) fail(ErrorCode::invalid_argument, "hurwitz_zeta_int needs a >= 1");

  int digits = digits10_v<Real>();
  // a+K large enough that the Bernoulli block can reach the target before the
  // asymptotic terms turn around (min term ~ e^{-2 pi (a+K)}).
  Real base_target = abs_tol > 0 ? abs_tol : eps_v<Real>();
  unsigned K = 8;
  {
    double need = digits * 2.303 * 0.75;
    double have = to_double(a);
    if (have + K < need) K = static_cast<unsigned>(need - have) + 1;
  }
  for (int attempt = 0; attempt < 3; ++attempt) {
    Real acc = 0;
    for (unsigned k = 0; k < K; ++k) acc += pow(a + k, -static_cast<int>(s));
    Real aK = a + K;
    Real aK_inv_s = pow(aK, -static_cast<int>(s));
    acc += aK * aK_inv_s / (s - 1);  // (a+K)^{1-s}/(s-1)
    acc += aK_inv_s / 2;
    // Bernoulli block: B_{2r}/(2r)! * (s)(s+1)...(s+2r-2) * (a+K)^{-s-2r+1}
    Real rising = Real(s);              // (s)_1
    Real power = aK_inv_s * aK;         // (a+K)^{1-s}
    Real aK2 = aK * aK;
    bool converged = false;
    for (unsigned r = 1; r <= 400; ++r) {
      power /= aK2;  // (a+K)^{-s-2r+1}
      Real term = to_real<Real>(bernoulli(2 * r)) /
                  to_real<Real>(factorial_big(2 * r)) * rising * power;
      acc += term;
      // prepare (s)_{2r+1} for next r
      rising *= Real(s + 2 * r - 1) * Real(s + 2 * r);
      Real next_bound = abs(to_real<Real>(bernoulli(2 * r + 2))) /
                        to_real<Real>(factorial_big(2 * r + 2)) * rising * power / aK2;
      if (next_bound < base_target) {
        converged = true;
        break;
      }
    }
    if (converged) return acc;
    K *= 2;
  }
  fail(ErrorCode::tolerance, "hurwitz_zeta_int did not reach the requested tolerance");
}

namespace detail {
template <class Real>
struct ZetaEvenCache {
  std::vector<Real> values;  // values[n] = zeta(2n), n >= 1 (values[0] unused)
  std::mutex mu;
};
}  // namespace detail

// zeta(2n), cached per real tier.
template <class Real>
Real zeta_even(unsigned n) {
  static detail::ZetaEvenCache<Real> cache;
  std::lock_guard<std::mutex> lock(cache.mu);
  if (cache.values.empty()) cache.values.resize(1);
  while (cache.values.size() <= n) {
    unsigned m = static_cast<unsigned>(cache.values.size());
    cache.values.push_back(hurwitz_zeta_int<Real>(2 * m, Real(1), eps_v<Real>()));
  }
  return cache.values[n];
}

}  // namespace resurgia
