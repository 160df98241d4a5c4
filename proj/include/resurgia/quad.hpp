#pragma once

#include <mutex>
#include <vector>

#include "resurgia/complex.hpp"
#include "resurgia/errors.hpp"
#include "resurgia/real.hpp"

namespace resurgia {
namespace quad {

template <class Real>
struct QuadResult {
  Complex<Real> value;
  Real error_estimate{};
  int levels = 0;
  long evals = 0;
};

namespace detail {

// tanh-sinh abscissae in endpoint-offset form:
//   x = a + (b-a)*sigma,  sigma = 1/(1+e^{2u}),  u = (pi/2) sinh t,
// stored with the symmetric weight  w = (b-a) * (pi/2) cosh t * sech^2(u) ... /
// in sigma-normalized form w_sigma = (pi/2) cosh(t) / (2 cosh^2(u)).
// sigma is exact near 0, so integrable endpoint singularities at `a`
// (p^alpha, log p) are sampled without cancellation.
template <class Real>
struct TsNode {
  Real sigma;   // offset fraction from the left endpoint, in (0, 1/2]
  Real weight;  // d sigma / dt weight (step not included)
};

template <class Real>
struct TsTable {
  // level L holds the nodes new at step h = 1/2^L (t > 0 only; t = 0 node
  // stored in level 0 front)
  std::vector<std::vector<TsNode<Real>>> levels;
  Real t_max{};
  std::mutex mu;
};

template <class Real>
Real ts_tmax() {
  // weight ~ exp(-(pi/2) e^t); run until it underflows the tier
  double digits = digits10_v<Real>();
  double t = std::log((2.0 / 3.141592653589793) * (digits + 6) * 2.302585);
  return Real(t + 0.5);
}

template <class Real>
void ts_extend(TsTable<Real>& tab, int level) {
  if (tab.levels.empty()) {
    tab.t_max = ts_tmax<Real>();
    Real half_pi = pi_v<Real>() / 2;
    // level 0: t = 0, 1, 2, ..., t_max with step 1
    std::vector<TsNode<Real>> lvl0;
    for (int k = 0;; ++k) {
      Real t = Real(k);
      if (t > tab.t_max) break;
      Real u = half_pi * sinh(t);
      Real ch = cosh(u);
      TsNode<Real> node;
      node.sigma = Real(1) / (1 + exp(2 * u));
      node.weight = half_pi * cosh(t) / (2 * ch * ch);
      lvl0.push_back(node);
    }
    tab.levels.push_back(std::move(lvl0));
  }
  Real half_pi = pi_v<Real>() / 2;
  while (static_cast<int>(tab.levels.size()) <= level) {
    int L = static_cast<int>(tab.levels.size());
    Real step = Real(1) / Real(1L << L);
    std::vector<TsNode<Real>> lvl;
    for (long k = 1;; k += 2) {
      Real t = Real(k) * step;
      if (t > tab.t_max) break;
      Real u = half_pi * sinh(t);
      Real ch = cosh(u);
      TsNode<Real> node;
      node.sigma = Real(1) / (1 + exp(2 * u));
      node.weight = half_pi * cosh(t) / (2 * ch * ch);
      lvl.push_back(node);
    }
    tab.levels.push_back(std::move(lvl));
  }
}

template <class Real>
TsTable<Real>& ts_table() {
  static TsTable<Real> tab;
  return tab;
}

}  // namespace detail

// Pairwise (deterministic tree-order) reduction; reproducible independent of
// chunking.
template <class Real>
Complex<Real> pairwise_sum(std::vector<Complex<Real>>& v) {
  if (v.empty()) return {};
  size_t n = v.size();
  while (n > 1) {
    size_t m = 0;
    for (size_t i = 0; i + 1 < n; i += 2) v[m++] = v[i] + v[i + 1];
    if (n & 1) v[m++] = v[n - 1];
    n = m;
  }
  return v[0];
}

// Integrate f over (a, b) with tanh-sinh node doubling. Node offsets from
// either endpoint are exact, so when a == 0 the left-end abscissae carry full
// precision down to the underflow floor; integrable singularities at 0
// (p^alpha with alpha > -1, log p) are handled by the grading itself.
template <class Real, class F>
QuadResult<Real> tanh_sinh(F&& f, const Real& a, const Real& b, const Real& tol,
                           int max_level = 11) {
  auto& tab = detail::ts_table<Real>();
  std::lock_guard<std::mutex> lock(tab.mu);
  detail::ts_extend(tab, max_level);

  Real width = b - a;
  QuadResult<Real> res;
  Real step = 1;
  std::vector<Complex<Real>> terms;

  auto eval_node = [&](const detail::TsNode<Real>& nd, bool both_sides) {
    Complex<Real> s = f(a + nd.sigma * width);
    if (both_sides) s += f(b - nd.sigma * width);
    res.evals += both_sides ? 2 : 1;
    return s * Complex<Real>(nd.weight);
  };

  // level 0 (the t = 0 node at sigma = 1/2 is its own mirror)
  {
    const auto& lvl = tab.levels[0];
    terms.push_back(eval_node(lvl[0], false));
    for (size_t i = 1; i < lvl.size(); ++i) terms.push_back(eval_node(lvl[i], true));
  }
  Complex<Real> total = pairwise_sum(terms);
  Complex<Real> integral = total * Complex<Real>(step * width);
  Complex<Real> prev = integral;

  for (int L = 1; L <= max_level; ++L) {
    step /= 2;
    terms.clear();
    for (const auto& nd : tab.levels[L]) terms.push_back(eval_node(nd, true));
    total += pairwise_sum(terms);
    integral = total * Complex<Real>(step * width);
    res.levels = L;
    Real delta = abs(integral - prev);
    prev = integral;
    if (L >= 3 && delta <= tol / 4) {
      res.value = integral;
      res.error_estimate = delta;
      return res;
    }
  }
  res.error_estimate = abs(integral - prev);
  if (!(res.error_estimate <= tol))
    fail(ErrorCode::tolerance, "tanh_sinh did not converge to tolerance " +
                                   real_to_string(tol, 3) + " (reached " +
                                   real_to_string(res.error_estimate, 3) + ")");
  res.value = integral;
  return res;
}

// Closed-circle contour integral (counterclockwise) by the trapezoid rule
// with node doubling; geometric convergence for integrands analytic on an
// annulus around the circle.
template <class Real, class F>
Complex<Real> circle_integral(F&& g, const Complex<Real>& center, const Real& radius,
                              const Real& tol, int max_nodes_log2 = 14) {
  Real two_pi = 2 * pi_v<Real>();
  Complex<Real> prev;
  bool have_prev = false;
  for (int m = 5; m <= max_nodes_log2; ++m) {
    long M = 1L << m;
    std::vector<Complex<Real>> terms(static_cast<size_t>(M));
    Real mag = 0;
    for (long j = 0; j < M; ++j) {
      Real theta = two_pi * (Real(j) + Real(1) / 2) / Real(M);
      Complex<Real> dir = polar(radius, theta);
      Complex<Real> z = center + dir;
      // ds = i * dir * dtheta
      terms[static_cast<size_t>(j)] = g(z) * Complex<Real>::i() * dir;
      mag += abs(terms[static_cast<size_t>(j)]);
    }
    Complex<Real> integral = pairwise_sum(terms) * Complex<Real>(two_pi / Real(M));
    // rounding floor: large oscillatory integrands cannot cancel below it
    Real floor_err = mag * (two_pi / Real(M)) * eps_v<Real>() * 64;
    if (have_prev && abs(integral - prev) <= tol + floor_err) return integral;
    prev = integral;
    have_prev = true;
  }
  fail(ErrorCode::tolerance,
       "circle_integral node doubling did not converge (singularity on or near the contour?)");
}

template <class Real>
struct LaplaceResult {
  Complex<Real> value;
  Real p_max{};
  Real quad_error{};
  Real tail_bound{};
};

// int_0^inf e^{-Np} g(p) dp with certified truncation. The caller supplies an
// exponential envelope |g(p)| <= C e^{a p}; truncation point from
// C e^{-(N-a)P}/(N-a) <= tol/2. Graded tanh-sinh handles p^alpha (alpha > -1)
// endpoint behavior at 0; the integrand receives (p, p) so the distance
// argument is p itself there.
template <class Real, class F>
LaplaceResult<Real> laplace(F&& g, const Real& N, const Real& tol,
                            const Real& env_C = Real(1), const Real& env_a = Real(0),
                            int max_level = 11) {
  if (!(N >= 1)) fail(ErrorCode::invalid_argument, "laplace needs N >= 1");
  if (!(env_a < N))
    fail(ErrorCode::divergent, "laplace: integrand growth rate >= N, integral divergent");
  Real rate = N - env_a;
  Real p_max = log(2 * env_C / (rate * tol)) / rate;
  if (p_max < Real(1) / 2) p_max = Real(1) / 2;

  auto integrand = [&](const Real& p) { return Complex<Real>(exp(-N * p)) * g(p); };
  auto q = tanh_sinh(integrand, Real(0), p_max, tol / 2, max_level);
  LaplaceResult<Real> out;
  out.value = q.value;
  out.p_max = p_max;
  out.quad_error = q.error_estimate;
  out.tail_bound = env_C * exp(-rate * p_max) / rate;
  return out;
}

}  // namespace quad
}  // namespace resurgia
