#pragma once

#include <array>
#include <optional>
#include <vector>

#include "resurgia/hypotheses.hpp"
#include "resurgia/kernel.hpp"
#include "resurgia/quad.hpp"

namespace resurgia {
namespace emsum {

using funcs::Expr;
using funcs::SingKind;
using funcs::SingularityRecord;
using funcs::StripHypothesis;

template <class Real>
struct TransseriesTerm {
  Complex<Real> lambda;
  long m = 0;  // correction index; prefactor carries (m+1)
  Complex<Real> prefactor;      // e^{+-2 pi i lambda (m+1) N}
  Complex<Real> laplace_value;  // (L G_{f,lambda,m})(N)
  Real magnitude;               // e^{-2 pi |Im lambda| (m+1) N}
  Complex<Real> contribution;   // the full additive term
};

template <class Real>
struct SummationReport {
  long N = 0;
  Complex<Real> integral_term;  // N * int_0^1 f
  Complex<Real> boundary_term;  // (f(1) - f(0))/2
  Complex<Real> log_terms;      // (c/2) log N + (c/2) log 2pi (em_log only)
  Complex<Real> laplace_term;   // (L G)(N)
  std::vector<TransseriesTerm<Real>> corrections;
  Complex<Real> total;      // exact re-addition of the terms above
  Complex<Real> oracle;     // direct_sum, recomputed
  Real residual;            // |total - oracle|, recomputed

  void finalize(const Complex<Real>& direct) {
    total = integral_term + boundary_term + log_terms + laplace_term;
    for (const auto& t : corrections) total += t.contribution;
    oracle = direct;
    residual = abs(total - oracle);
  }
};

// ---------------------------------------------------------------------------
// direct_sum: compensated (Neumaier) summation of f(k/N), the oracle side of
// every driver.
template <class Real = double>
Complex<Real> direct_sum(const Expr& f, long N) {
  if (N < 1) fail(ErrorCode::invalid_argument, "direct_sum needs N >= 1");
  auto add_comp = [](Real& s, Real& comp, const Real& v) {
    Real t = s + v;
    if (abs(s) >= abs(v))
      comp += (s - t) + v;
    else
      comp += (v - t) + s;
    s = t;
  };
  Real sr = 0, si = 0, cr = 0, ci = 0;
  for (long k = 1; k <= N; ++k) {
    Complex<Real> v = evaluate(f, Complex<Real>(Real(k) / Real(N)));
    add_comp(sr, cr, v.re);
    add_comp(si, ci, v.im);
  }
  return {sr + cr, si + ci};
}

// ---------------------------------------------------------------------------
// Classical truncated Euler-MacLaurin.

template <class Real>
struct ClassicalResult {
  Complex<Real> value;
  Real first_omitted;  // magnitude of the first omitted term (Gevrey-1 estimate)
  size_t order_used;
};

namespace detail {

template <class Real>
Complex<Real> integral01(const Expr& f, const Real& tol) {
  auto q = quad::tanh_sinh(
      [&](const Real& x) { return evaluate(f, Complex<Real>(x)); }, Real(0), Real(1), tol);
  return q.value;
}

}  // namespace detail

template <class Real = double>
ClassicalResult<Real> em_classical(const Expr& f, long N, size_t M) {
  Real tol = eps_v<Real>() * 64 * N;
  Complex<Real> acc = Complex<Real>(Real(N)) * detail::integral01(f, tol / N);
  Complex<Real> f1 = evaluate(f, Complex<Real>(Real(1)));
  Complex<Real> f0 = evaluate(f, Complex<Real>(Real(0)));
  acc += (f1 - f0) / Complex<Real>(Real(2));
  // remainder slots through the first omitted one
  auto rem = series::em_remainder_series<Real>(f, M + 3);
  Real invN = Real(1) / Real(N);
  Real npow = invN;
  Real first_omitted = 0;
  for (size_t k = 1; k < rem.order(); ++k, npow *= invN) {
    if (rem.c[k] == Complex<Real>()) continue;
    if (k < M) {
      acc += rem.c[k] * Complex<Real>(npow);
    } else {
      first_omitted = abs(rem.c[k]) * npow;
      break;
    }
  }
  return {acc, first_omitted, M};
}

// Optimal (smallest first-omitted-term) truncation order for f at N.
template <class Real = double>
size_t em_classical_optimal_order(const Expr& f, long N, size_t cap = 80) {
  auto rem = series::em_remainder_series<Real>(f, cap);
  Real invN = Real(1) / Real(N), npow = invN;
  Real best = -1;
  size_t best_k = cap;
  for (size_t k = 1; k < rem.order(); ++k, npow *= invN) {
    if (rem.c[k] == Complex<Real>()) continue;
    Real mag = abs(rem.c[k]) * npow;
    if (best < 0 || mag < best) {
      best = mag;
      best_k = k;
    } else if (mag > best * 4) {
      break;  // safely past the optimal index
    }
  }
  return best_k;
}

// ---------------------------------------------------------------------------
// Shared main-terms assembly (Proposition-2 block). em_exact and the
// degenerate transseries case run through this single path.

template <class Real>
SummationReport<Real> main_terms_report(const Expr& f, const borel::GfEvaluator<Real>& gf,
                                        long N, const Real& tol) {
  SummationReport<Real> rep;
  rep.N = N;
  rep.integral_term = Complex<Real>(Real(N)) * detail::integral01(f, tol / (8 * N));
  Complex<Real> f1 = evaluate(f, Complex<Real>(Real(1)));
  Complex<Real> f0 = evaluate(f, Complex<Real>(Real(0)));
  rep.boundary_term = (f1 - f0) / Complex<Real>(Real(2));
  auto lap = quad::laplace([&](const Real& p) { return gf(Complex<Real>(p), tol / 4).value; },
                           Real(N), tol / 4, gf.envelope_C(), gf.envelope_rate());
  rep.laplace_term = lap.value;
  return rep;
}

// Exact Euler-MacLaurin under (A1): three main terms, residual against the
// direct sum recomputed in the report.
template <class Real = double>
SummationReport<Real> em_exact(const Expr& f, long N, const Real& tol) {
  auto hyp = funcs::check_strip_hypothesis(f, StripHypothesis::A1);
  if (!hyp.passed())
    fail(ErrorCode::hypothesis,
         "em_exact: (A1) violated (strip singularity or decay failure); use em_transseries");
  borel::GfEvaluator<Real> gf(f);
  auto rep = main_terms_report(f, gf, N, tol);
  rep.finalize(direct_sum<Real>(f, N));
  return rep;
}

// ---------------------------------------------------------------------------
// Abel-Plana driver.

template <class Real = double>
Complex<Real> abel_plana(const Expr& f, long N, const Real& tol) {
  auto hyp = funcs::check_strip_hypothesis(f, StripHypothesis::A1);
  if (!hyp.passed()) fail(ErrorCode::hypothesis, "abel_plana: strip hypothesis violated");

  Complex<Real> acc = Complex<Real>(Real(N)) * detail::integral01(f, tol / (8 * N));
  Complex<Real> f1 = evaluate(f, Complex<Real>(Real(1)));
  Complex<Real> f0 = evaluate(f, Complex<Real>(Real(0)));
  acc += (f1 - f0) / Complex<Real>(Real(2));

  double rate = hyp.classifier_superexp ? 2 * pi_v<double>() * 0.9 : hyp.classifier_rate;
  double gap = 2 * pi_v<double>() - rate;
  if (gap < 0.5) gap = 0.5;
  double Y = (digits10_v<Real>() * 2.302585 + std::log(1.0 / to_double(tol)) + 8) / gap;

  Real invN(Real(1) / Real(N));
  auto integrand = [&](const Real& y) -> Complex<Real> {
    Complex<Real> iy(Real(0), y * invN);
    Complex<Real> br = evaluate(f, iy) - evaluate(f, Complex<Real>(Real(1)) + iy) -
                       evaluate(f, -iy) + evaluate(f, Complex<Real>(Real(1)) - iy);
    return br / Complex<Real>(expm1(2 * pi_v<Real>() * y));
  };
  auto q = quad::tanh_sinh(integrand, Real(0), Real(Y), tol / 2);
  acc += Complex<Real>::i() * q.value;
  return acc;
}

// ---------------------------------------------------------------------------
// Transseries corrections (Theorem-3 block, proof-derived indexing).
//
// With F the M-fold antiderivative of f (M = 0 unless poles force parts),
// oriented jumps across the vertical cut at lambda,
//   J_up(u)   = -2 pi i h(u)                         (log kind)
//             = -(1 - e^{-2 pi i alpha}) u^alpha h(u) (power kind)
//   J_down(u) = +2 pi i h(u)
//             = -(1 - e^{+2 pi i alpha}) u^alpha h(u)
// and kernels G_m(p) = (i / (2 pi (m+1))) J(u)|_{u = +- i p / (2 pi (m+1))},
// the corrections read
//   Im l > 0:  - N (-2 pi i N(m+1))^M e^{+2 pi i l (m+1) N} (L G_m)(N)
//   Im l < 0:  + N (+2 pi i N(m+1))^M e^{-2 pi i l (m+1) N} (L G'_m)(N).
// The sign and index conventions were frozen against direct-sum oracles.

namespace detail {

inline Expr jump_expr(const SingularityRecord& rec, bool upper) {
  if (!rec.germ)
    fail(ErrorCode::unsupported, "transseries: no germ handle for a strip singularity");
  Expr u = Expr::var();
  Expr two_pi_i = Expr::constant(2) * Expr::pi() * Expr::i();
  if (rec.kind == SingKind::Logarithmic) {
    Expr base = two_pi_i * (*rec.germ);
    return upper ? -base : base;
  }
  if (rec.kind != SingKind::AlgebraicPower)
    fail(ErrorCode::unsupported, "transseries: unsupported singularity kind for the jump");
  Expr alpha = Expr::constant(rec.alpha);
  Expr phase = upper ? exp(-(two_pi_i * alpha)) : exp(two_pi_i * alpha);
  Expr u_alpha = exp(alpha * log(u));
  return -((Expr::constant(1) - phase) * u_alpha * (*rec.germ));
}

template <class Real>
Complex<Real> exact_lambda(const SingularityRecord& rec) {
  if (rec.exact_location)
    return to_complex<Real>(*rec.exact_location);
  return Complex<Real>(Real(rec.location.re), Real(rec.location.im));
}

}  // namespace detail

template <class Real = double>
std::vector<TransseriesTerm<Real>> transseries_corrections(
    const std::vector<SingularityRecord>& records, long parts_M, long N, const Real& tol,
    long m_max) {
  std::vector<TransseriesTerm<Real>> out;
  Real two_pi = 2 * pi_v<Real>();
  for (const auto& rec : records) {
    bool upper = rec.location.im > 0;
    Expr J = detail::jump_expr(rec, upper);
    Complex<Real> lam = detail::exact_lambda<Real>(rec);
    double jump_rate = borel::detail::exp_type(J.root());
    for (long m = 0; m <= m_max; ++m) {
      Real scale = two_pi * Real(m + 1);
      auto kernel = [&](const Real& p) -> Complex<Real> {
        Complex<Real> u(Real(0), p / scale);
        if (!upper) u = -u;
        return Complex<Real>::i() / Complex<Real>(scale) * evaluate(J, u);
      };
      // envelope |G_m(p)| <= C e^{(a/scale) p}
      Real env_a = Real(jump_rate) / scale;
      Real env_C = 1;
      for (double ps : {0.5, 1.0, 2.0}) {
        Real pr(ps);
        Real cand = 2 * abs(kernel(pr)) * exp(-env_a * pr);
        if (cand > env_C) env_C = cand;
      }
      auto lap = quad::laplace(kernel, Real(N), tol / Real(2 * (m + 1) * (m + 1)), env_C, env_a);

      TransseriesTerm<Real> term;
      term.lambda = lam;
      term.m = m;
      Complex<Real> phase = Complex<Real>(Real(0), two_pi * Real(m + 1) * Real(N));
      term.prefactor = upper ? exp(phase * lam) : exp(-(phase * lam));
      term.laplace_value = lap.value;
      term.magnitude = exp(-two_pi * abs(Real(rec.location.im)) * Real(m + 1) * Real(N));
      Complex<Real> parts_factor(Real(1));
      if (parts_M > 0) {
        // (-+ 2 pi i N (m+1))^M from M integrations by parts
        Complex<Real> B(Real(0), two_pi * Real(N) * Real(m + 1));
        if (upper) B = -B;
        parts_factor = pow_int(B, parts_M);
      }
      Complex<Real> sign = upper ? Complex<Real>(Real(-1)) : Complex<Real>(Real(1));
      term.contribution =
          sign * Complex<Real>(Real(N)) * parts_factor * term.prefactor * term.laplace_value;
      out.push_back(term);
    }
  }
  return out;
}

// Theorem-3 driver: main terms plus exponentially small corrections for each
// strip singularity; integrates by parts symbolically when poles are present.
template <class Real = double>
SummationReport<Real> em_transseries(const Expr& f, long N, const Real& tol, long m_max = 4) {
  auto hyp = funcs::check_strip_hypothesis(f, StripHypothesis::A2);
  if (!hyp.singularity_ok)
    fail(ErrorCode::hypothesis, "em_transseries: a singularity lies on [0,1]");
  if (!hyp.decay_ok || !hyp.l1_ok)
    fail(ErrorCode::hypothesis, "em_transseries: strip decay/L1 hypothesis failed");
  if (!hyp.a4_ok)
    fail(ErrorCode::hypothesis, "em_transseries: (A4) violated (coincident real parts)");

  auto records = funcs::singularities(f, funcs::Rectangle::strip());

  // pole mode: antidifferentiate past the worst pole order
  long parts_M = 0;
  for (const auto& r : records)
    if (r.kind == SingKind::Pole) parts_M = std::max(parts_M, r.pole_order);
  Expr F = f;
  for (long j = 0; j < parts_M; ++j) {
    auto Fa = funcs::antiderivative(F);
    if (!Fa)
      fail(ErrorCode::unsupported,
           "em_transseries: alpha <= -1 with no symbolic antiderivative available in class");
    F = *Fa;
  }
  std::vector<SingularityRecord> jump_records =
      parts_M > 0 ? funcs::singularities(F, funcs::Rectangle::strip()) : records;
  for (const auto& r : jump_records)
    if (r.kind == SingKind::Pole || r.kind == SingKind::Mixed)
      fail(ErrorCode::unsupported,
           "em_transseries: residual pole after integration by parts");

  borel::GfEvaluator<Real> gf(f);
  auto rep = main_terms_report(f, gf, N, tol);
  rep.corrections = transseries_corrections<Real>(jump_records, parts_M, N, tol, m_max);
  rep.finalize(direct_sum<Real>(f, N));
  return rep;
}

// ---------------------------------------------------------------------------
// Logarithmic-singularity driver: f(x) = c log x + g(x), g under (A1).

template <class Real = double>
SummationReport<Real> em_log(const Complex<Real>& c, const Expr& g, long N, const Real& tol) {
  auto hyp = funcs::check_strip_hypothesis(g, StripHypothesis::A1);
  if (!hyp.passed()) fail(ErrorCode::hypothesis, "em_log: g fails (A1)");

  SummationReport<Real> rep;
  rep.N = N;
  // N int_0^1 f = N int_0^1 g - N c (int_0^1 log = -1, exact)
  rep.integral_term =
      Complex<Real>(Real(N)) * detail::integral01(g, tol / (8 * N)) - Complex<Real>(Real(N)) * c;
  Complex<Real> g1 = evaluate(g, Complex<Real>(Real(1)));
  Complex<Real> g0 = evaluate(g, Complex<Real>(Real(0)));
  rep.boundary_term = (g1 - g0) / Complex<Real>(Real(2));
  Real log_2pi = log(2 * pi_v<Real>());
  rep.log_terms = c / Complex<Real>(Real(2)) * Complex<Real>(log(Real(N)) + log_2pi);

  borel::GfEvaluator<Real> gg(g);
  auto lap = quad::laplace(
      [&](const Real& p) {
        return gg(Complex<Real>(p), tol / 4).value + c * borel::H_kernel(Complex<Real>(p));
      },
      Real(N), tol / 4, gg.envelope_C() + abs(c) + 1, gg.envelope_rate());
  rep.laplace_term = lap.value;

  // oracle: direct sum of c log(k/N) + g(k/N)
  Complex<Real> direct = direct_sum<Real>(g, N);
  Real logsum = 0, comp = 0;
  for (long k = 1; k <= N; ++k) {
    Real v = log(Real(k) / Real(N));
    Real t = logsum + v;
    comp += (abs(logsum) >= abs(v)) ? (logsum - t) + v : (v - t) + logsum;
    logsum = t;
  }
  direct += c * Complex<Real>(logsum + comp);
  rep.finalize(direct);
  return rep;
}

// Exact Stirling: log(N!/N^N) = (1/2) log N - N + (1/2) log 2pi + (L H)(N).
template <class Real = double>
Complex<Real> stirling_exact(long N, const Real& tol) {
  if (N < 1) fail(ErrorCode::invalid_argument, "stirling_exact needs N >= 1");
  auto lap = quad::laplace([&](const Real& p) { return borel::H_kernel(Complex<Real>(p)); },
                           Real(N), tol, Real(1), Real(0));
  Real half(Real(1) / Real(2));
  return Complex<Real>(half * log(Real(N)) - Real(N) + half * log(2 * pi_v<Real>())) + lap.value;
}

// ---------------------------------------------------------------------------
// Appendix identities: boundary integrals vs Laplace sums, term by term.
// Identity j in {1,2,3,4}:
//   -i int [f(1+iy/N)-f(1)]/(e^{2 pi y}-1) dy = (1/4pi^2) sum 1/n^2 L[f'(1 - p/2 pi i n)]
//   +i int [f(1-iy/N)-f(1)]/(...)            = (1/4pi^2) sum 1/n^2 L[f'(1 + p/2 pi i n)]
//   +i int [f(iy/N)-f(0)]/(...)              = -(1/4pi^2) sum 1/n^2 L[f'(- p/2 pi i n)]
//   -i int [f(-iy/N)-f(0)]/(...)             = -(1/4pi^2) sum 1/n^2 L[f'(+ p/2 pi i n)]
// The n-series is truncated with a zeta-accelerated tail.

template <class Real = double>
std::array<Real, 4> abel_plana_term_identities(const Expr& f, long N, const Real& tol) {
  auto hyp = funcs::check_strip_hypothesis(f, StripHypothesis::A1);
  if (!hyp.passed())
    fail(ErrorCode::hypothesis, "abel_plana_term_identities: (A1) violated");
  Expr fp = differentiate(f);
  Real two_pi = 2 * pi_v<Real>();
  Real invN(Real(1) / Real(N));

  struct Side {
    double x0;      // 1 or 0
    int y_sign;     // +1: f(x0 + iy/N), -1: f(x0 - iy/N)
    int lhs_sign;   // sign of i * integral
    int traj_sign;  // f'(x0 + traj_sign * p/(2 pi i n))
    int rhs_sign;   // sign of the (1/4pi^2) sum
  };
  const Side sides[4] = {{1.0, +1, -1, -1, +1},
                         {1.0, -1, +1, +1, +1},
                         {0.0, +1, +1, -1, -1},
                         {0.0, -1, -1, +1, -1}};

  std::array<Real, 4> out{};
  for (int j = 0; j < 4; ++j) {
    const Side& sd = sides[j];
    Complex<Real> x0(Real(sd.x0));
    Complex<Real> fx0 = evaluate(f, x0);
    double Y = (digits10_v<Real>() * 2.302585 + 10) / (2 * pi_v<double>() - 1.0);
    auto lhs_integrand = [&](const Real& y) {
      Complex<Real> z = x0 + Complex<Real>(Real(0), Real(sd.y_sign) * y * invN);
      return (evaluate(f, z) - fx0) / Complex<Real>(expm1(two_pi * y));
    };
    Complex<Real> lhs = Complex<Real>(Real(sd.lhs_sign)) * Complex<Real>::i() *
                        quad::tanh_sinh(lhs_integrand, Real(0), Real(Y), tol / 4).value;

    long nstar = 48;
    Complex<Real> rhs;
    for (long n = 1; n <= nstar; ++n) {
      auto traj = [&](const Real& p) {
        Complex<Real> w = Complex<Real>(Real(sd.traj_sign)) * Complex<Real>(p) /
                          Complex<Real>(Real(0), two_pi * Real(n));
        return evaluate(fp, x0 + w);
      };
      auto lap = quad::laplace(traj, Real(N), tol / Real(4 * n * n), Real(4), Real(1) / 2);
      rhs += lap.value / Complex<Real>(Real(n) * Real(n));
    }
    // tail over n > nstar: expand f' about x0 along the trajectory;
    // sum_n n^{-2-k} = zeta(k+2, nstar+1), L[p^k](N) = k!/N^{k+1}
    auto tay = funcs::taylor(fp, x0, 24);
    Complex<Real> dir = Complex<Real>(Real(sd.traj_sign)) /
                        Complex<Real>(Real(0), two_pi);  // w = dir * p / n
    Complex<Real> dpow(Real(1));
    Real kfact = 1, npow = Real(1) / Real(N);
    for (size_t k = 0; k < 24; ++k) {
      if (k > 0) {
        kfact *= k;
        npow /= Real(N);
      }
      Real z = hurwitz_zeta_int<Real>(static_cast<unsigned>(k + 2), Real(nstar + 1),
                                      eps_v<Real>());
      rhs += tay.c[k] * dpow * Complex<Real>(z * kfact * npow);
      dpow *= dir;
    }
    rhs = Complex<Real>(Real(sd.rhs_sign)) * rhs / Complex<Real>(two_pi * two_pi);
    out[j] = abs(lhs - rhs);
  }
  return out;
}

}  // namespace emsum
}  // namespace resurgia
