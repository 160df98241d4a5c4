#pragma once

#include <map>
#include <vector>

#include "resurgia/bernoulli.hpp"
#include "resurgia/hypotheses.hpp"
#include "resurgia/quad.hpp"
#include "resurgia/series.hpp"
#include "resurgia/singularity.hpp"
#include "resurgia/zeta.hpp"

namespace resurgia {

namespace series {

// Euler-MacLaurin remainder series: B_{2n}/(2n)! (f^{(2n-1)}(1)-f^{(2n-1)}(0))
// in the 1/N^{2n-1} slots, zeros elsewhere, for 2n-1 < M.
template <class Real = double>
TruncatedSeries<Complex<Real>> em_remainder_series(const Expr& f, size_t M) {
  TruncatedSeries<Complex<Real>> out("1/N", M);
  TruncatedSeries<Complex<Real>> t0, t1;
  try {
    t0 = funcs::taylor(f, Complex<Real>(Real(0)), M + 1);
    t1 = funcs::taylor(f, Complex<Real>(Real(1)), M + 1);
  } catch (const Error& e) {
    fail(ErrorCode::domain,
         std::string("em_remainder_series: singularity at an endpoint (") + e.what() + ")");
  }
  // slot 2n-1 gets B_{2n}/(2n)! * f^{(2n-1)} difference; with Taylor
  // coefficients a_k = f^{(k)}/k! this is B_{2n}/(2n) * (a_k(1) - a_k(0)).
  for (size_t n = 1; 2 * n - 1 < M; ++n) {
    size_t k = 2 * n - 1;
    Real b_over = to_real<Real>(bernoulli(static_cast<unsigned>(2 * n))) / Real(2 * n);
    out.c[k] = Complex<Real>(b_over) * (t1.c[k] - t0.c[k]);
  }
  return out;
}

}  // namespace series

namespace borel {

using funcs::BranchMap;
using funcs::Expr;

enum class KernelRoute { Series, Integral };

template <class Real>
struct KernelEval {
  Complex<Real> value;
  Real tail_bound{};
  KernelRoute route = KernelRoute::Series;
  long term_count = 0;
};

struct SingularitySet {
  std::vector<Complex<double>> generators;  // omega (singularities of f')
  std::vector<Complex<double>> points;      // materialized 2 pi i n omega, 2 pi i n (omega-1)
};

namespace detail {

// |exp factor| <= C e^{a|z|}: crude exponential type per node class.
inline double exp_type(const funcs::NodePtr& n) {
  using funcs::NodeKind;
  using funcs::FunKind;
  switch (n->kind) {
    case NodeKind::Const:
    case NodeKind::ImagUnit:
    case NodeKind::Pi:
    case NodeKind::Var: return 0;
    case NodeKind::Add:
    case NodeKind::Sub: return std::max(exp_type(n->a), exp_type(n->b));
    case NodeKind::Mul:
    case NodeKind::Div: return exp_type(n->a) + exp_type(n->b);
    case NodeKind::Neg: return exp_type(n->a);
    case NodeKind::Pow: return std::abs(double(n->exponent)) * exp_type(n->a);
    case NodeKind::Fun: {
      if (n->fun == FunKind::Log) return 0;
      auto c = funcs::detail::linear_coeff(n->a);
      if (c) return to_double(abs(*c));
      return 64.0;  // unknown: forces conservative truncation points
    }
  }
  return 64.0;
}

inline long pow2_at_least(double x) {
  long v = 16;
  while (v < x && v < (1L << 24)) v *= 2;
  return v;
}

}  // namespace detail

// Evaluator for G_f(p) by the singularity expansion of the Borel kernel:
//   G_f(p) = 1/(4 pi^2) [ sum_{n<=N*} bracket_n / n^2  +  tail ],
//   bracket_n = f'(1+w)+f'(1-w)-f'(w)-f'(-w),  w = p/(2 pi i n),
// with the tail summed in closed form through the even Taylor coefficients
// of f' at 0 and 1 against Hurwitz zeta values:
//   tail = 2 sum_j (a_{2j}(1)-a_{2j}(0)) (p/2 pi i)^{2j} zeta(2j+2, N*+1),
// remainder certified by Cauchy bounds on the Taylor-disk radius. Branch-type
// f' is evaluated on the strip-continued branch.
template <class Real>
class GfEvaluator {
 public:
  explicit GfEvaluator(const Expr& f)
      : f_(f), fp_(differentiate(f)) {
    records_ = funcs::singularities(fp_, funcs::Rectangle::disk_bound(1e6));
    std::vector<funcs::detail::SingularEvent> events;
    funcs::detail::collect_events(fp_.root(), events);
    for (auto& ev : events) {
      if (ev.type == funcs::detail::SingularEvent::PoleFromDiv) continue;
      auto factors = funcs::poly::squarefree_decomposition(ev.zero_poly);
      for (size_t k = 0; k < factors.size(); ++k) {
        if (funcs::poly::degree(factors[k]) != 1) {
          if (funcs::poly::degree(factors[k]) > 1)
            fail(ErrorCode::unsupported,
                 "kernel: non-affine branch argument unsupported for strip continuation");
          continue;
        }
        GaussianRational root = -(factors[k][0] / factors[k][1]);
        if (!(factors[k][1].is_real() && factors[k][1].re > 0))
          fail(ErrorCode::unsupported,
               "kernel: branch argument must be positively scaled affine");
        Complex<double> lam = to_complex<double>(root);
        if (std::abs(lam.im) < 1e-14) continue;  // cut exits the strip sideways
        cuts_.cuts[ev.log_node.get()] = {lam, lam.im > 0 ? +1 : -1};
      }
    }
    // Taylor-disk radius at the endpoints: distance to the nearest
    // singularity of f', capped at 1.
    radius_ = 1.0;
    for (auto& r : records_) {
      radius_ = std::min(radius_, 0.9 * to_double(abs(r.location)));
      radius_ = std::min(radius_, 0.9 * to_double(abs(r.location - Complex<double>(1.0))));
    }
    if (radius_ < 1e-3)
      fail(ErrorCode::unsupported, "kernel: singularity of f' too close to an endpoint");
    // sampled sup of |f'| on the two Taylor circles (x 1.5 safety)
    env_M_ = 0;
    for (double x0 : {0.0, 1.0}) {
      for (int j = 0; j < 32; ++j) {
        double th = 2 * pi_v<double>() * (j + 0.5) / 32;
        Complex<Real> z(Real(x0 + radius_ * std::cos(th)), Real(radius_ * std::sin(th)));
        env_M_ = std::max(env_M_, to_double(abs(funcs::evaluate_strip(fp_, z, cuts_))));
      }
    }
    env_M_ = 1.5 * env_M_ + 1e-30;
    exp_a_ = detail::exp_type(fp_.root());
    for (auto& r : records_) {
      for (long n = 1; n <= 8; ++n) {
        auto push = [&](Complex<double> w) {
          nearby_.push_back(Complex<double>(0, 2 * pi_v<double>() * n) * w);
          nearby_.push_back(Complex<double>(0, -2 * pi_v<double>() * n) * w);
        };
        push(r.location);
        push(r.location - Complex<double>(1.0));
      }
    }
  }

  const Expr& f() const { return f_; }
  const Expr& fprime() const { return fp_; }
  const std::vector<funcs::SingularityRecord>& fprime_singularities() const { return records_; }
  double exp_type() const { return exp_a_; }
  const BranchMap& cuts() const { return cuts_; }

  // Exponential envelope |G_f(p)| <= C e^{a|p|/2pi} (loose C is fine; it only
  // steers Laplace truncation points).
  Real envelope_C() const { return Real(env_M_ * 2); }
  Real envelope_rate() const { return Real(exp_a_ / (2 * pi_v<double>())); }

  KernelEval<Real> operator()(const Complex<Real>& p, const Real& tol) const {
    for (auto& nu : nearby_) {
      Complex<Real> d = p - Complex<Real>(Real(nu.re), Real(nu.im));
      if (to_double(abs(d)) < 1e-6)
        fail(ErrorCode::domain, "G_series: p within 1e-6 of a kernel singularity");
    }
    Real two_pi = 2 * pi_v<Real>();
    double ap = to_double(abs(p));
    long nstar = detail::pow2_at_least(std::max(16.0, ap / radius_));
    Complex<Real> one(Real(1));

    // direct block
    std::vector<Complex<Real>> terms;
    terms.reserve(static_cast<size_t>(nstar));
    for (long n = 1; n <= nstar; ++n) {
      Complex<Real> w = p / Complex<Real>(Real(0), two_pi * Real(n));
      Complex<Real> br = funcs::evaluate_strip(fp_, one + w, cuts_) +
                         funcs::evaluate_strip(fp_, one - w, cuts_) -
                         funcs::evaluate_strip(fp_, w, cuts_) -
                         funcs::evaluate_strip(fp_, -w, cuts_);
      terms.push_back(br / Complex<Real>(Real(n) * Real(n)));
    }
    Complex<Real> direct = quad::pairwise_sum(terms);

    // zeta-accelerated tail
    Real q = Real(ap) / (two_pi * Real(radius_) * Real(nstar));
    Real q2 = q * q;
    Real bound_scale = Real(4 * env_M_) / Real(nstar) / (1 - q2);
    const auto& zt = zeta_table(nstar);
    Complex<Real> w1 = p / Complex<Real>(Real(0), two_pi);  // p / (2 pi i)
    Complex<Real> w2 = w1 * w1;
    Complex<Real> wpow(Real(1));
    Complex<Real> tail;
    Real q2j(1);
    long used_j = 0;
    Real rem_bound = bound_scale;
    for (size_t j = 0; j < zt.diff.size(); ++j) {
      tail += Complex<Real>(Real(2)) * zt.diff[j] * wpow * Complex<Real>(zt.zeta[j]);
      wpow *= w2;
      q2j *= q2;
      rem_bound = bound_scale * q2j;
      used_j = static_cast<long>(j + 1);
      if (rem_bound < tol / 2) break;
    }
    if (!(rem_bound < tol / 2))
      fail(ErrorCode::tolerance, "G_series: tail bound could not certify the tolerance");

    KernelEval<Real> out;
    out.value = (direct + tail) / Complex<Real>(two_pi * two_pi);
    out.tail_bound = rem_bound / (two_pi * two_pi);
    out.route = KernelRoute::Series;
    out.term_count = nstar + used_j;
    return out;
  }

 private:
  struct ZetaTable {
    std::vector<Complex<Real>> diff;  // a_{2j}(1) - a_{2j}(0), Taylor of f'
    std::vector<Real> zeta;           // zeta(2j+2, nstar+1)
  };

  const ZetaTable& zeta_table(long nstar) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = tables_.find(nstar);
    if (it != tables_.end()) return it->second;
    // J large enough for the tier even at the worst admissible q (<= 1/(2 pi))
    double digits = digits10_v<Real>();
    double q_worst = 1.0 / (2 * pi_v<double>());
    size_t J = static_cast<size_t>(digits * 2.302585 / (2 * std::log(1 / q_worst))) + 8;
    if (taylor0_.order() < 2 * J + 1) {
      taylor0_ = funcs::taylor(fp_, Complex<Real>(Real(0)), 2 * J + 1);
      taylor1_ = funcs::taylor(fp_, Complex<Real>(Real(1)), 2 * J + 1);
    }
    ZetaTable t;
    t.diff.resize(J);
    t.zeta.resize(J);
    Real eps_goal = eps_v<Real>();
    for (size_t j = 0; j < J; ++j) {
      t.diff[j] = taylor1_.c[2 * j] - taylor0_.c[2 * j];
      t.zeta[j] = hurwitz_zeta_int<Real>(static_cast<unsigned>(2 * j + 2), Real(nstar + 1),
                                         eps_goal);
    }
    return tables_.emplace(nstar, std::move(t)).first->second;
  }

  Expr f_, fp_;
  std::vector<funcs::SingularityRecord> records_;
  BranchMap cuts_;
  double radius_ = 1.0;
  double env_M_ = 1.0;
  double exp_a_ = 0.0;
  std::vector<Complex<double>> nearby_;
  mutable std::map<long, ZetaTable> tables_;
  mutable TruncatedSeries<Complex<Real>> taylor0_, taylor1_;
  mutable std::mutex mu_;
};

// One-shot series-route evaluation.
template <class Real = double>
KernelEval<Real> G_series(const Expr& f, const Complex<Real>& p, const Real& tol) {
  GfEvaluator<Real> ev(f);
  return ev(p, tol);
}

// Double-integral route (Theorem-level second representation):
//   G_f(p) = 1/(4 pi^2) (1/2 pi i) int_0^inf du oint_{|s|=r0}
//            u/(e^u-1) [f(1+s)-f(s)]/s^2 (e^{pu/2 pi i s}+e^{-pu/2 pi i s}) ds
// Valid for |p| < 2 pi r0 (dominated convergence of the u-integral).
template <class Real = double>
KernelEval<Real> G_integral(const Expr& f, const Complex<Real>& p, const Real& tol) {
  auto records = funcs::singularities(f, funcs::Rectangle::disk_bound(1e6));
  double r0 = 0.45;
  for (auto& r : records) {
    r0 = std::min(r0, 0.5 * to_double(abs(r.location)));
    r0 = std::min(r0, 0.5 * to_double(abs(r.location - Complex<double>(1.0))));
  }
  if (r0 < 1e-3)
    fail(ErrorCode::domain, "G_integral: circle radius collides with a singularity of f");
  Real two_pi = 2 * pi_v<Real>();
  double beta = 1.0 - to_double(abs(p)) / (2 * pi_v<double>() * r0);
  if (beta <= 0.1)
    fail(ErrorCode::divergent,
         "G_integral: |p| too close to 2 pi r0, u-integral outside its convergence domain");

  const Real rr(r0);
  // sampled circle bound for the bracket (x 1.5 safety)
  double Cb = 0;
  for (int j = 0; j < 24; ++j) {
    double th = 2 * pi_v<double>() * (j + 0.5) / 24;
    Complex<Real> s = polar(rr, Real(th));
    Complex<Real> br =
        (evaluate(f, Complex<Real>(Real(1)) + s) - evaluate(f, s)) / (s * s);
    Cb = std::max(Cb, to_double(abs(br)));
  }
  Cb = 1.5 * Cb + 1e-30;

  // truncation U from: integrand <= 2 Cb u e^{-beta u} for u >= 1
  double tol_d = to_double(tol);
  double U = std::max(8.0, (std::log(4 * Cb * (1 + 1 / beta) / (beta * tol_d / 2))) / beta + 4);

  auto inner = [&](const Real& u) -> Complex<Real> {
    auto g = [&](const Complex<Real>& s) -> Complex<Real> {
      Complex<Real> z = p * Complex<Real>(u) / (Complex<Real>(Real(0), two_pi) * s);
      Complex<Real> br = evaluate(f, Complex<Real>(Real(1)) + s) - evaluate(f, s);
      return br / (s * s) * (exp(z) + exp(-z));
    };
    Real kernel = u == Real(0) ? Real(1) : u / expm1(u);
    // the outer kernel decays like u e^{-u}; relax the circle tolerance
    // accordingly so large-u loops are not over-resolved
    Real tol_inner = (tol / Real(4 * U)) / (kernel > 0 ? kernel : Real(1));
    Complex<Real> loop = quad::circle_integral(g, Complex<Real>(), rr, tol_inner);
    return loop * Complex<Real>(kernel);
  };
  auto outer = quad::tanh_sinh(inner, Real(0), Real(U), tol / 2);
  KernelEval<Real> out;
  out.value = outer.value / (Complex<Real>(two_pi * two_pi) * two_pi * Complex<Real>::i());
  out.tail_bound = Real(2 * Cb * (U + 1 / beta) * std::exp(-beta * U) / beta) +
                   outer.error_estimate;
  out.route = KernelRoute::Integral;
  out.term_count = outer.evals;
  return out;
}

// Predicted singularity set N = {2 pi i n w, 2 pi i n (w-1)} for w a
// singularity of f', materialized inside |p| <= R.
inline SingularitySet G_singularity_set(const Expr& f, double R) {
  SingularitySet out;
  auto records = funcs::singularities(differentiate(f), funcs::Rectangle::disk_bound(1e6));
  double two_pi = 2 * pi_v<double>();
  for (auto& r : records) {
    out.generators.push_back(r.location);
    for (Complex<double> w : {r.location, r.location - Complex<double>(1.0)}) {
      double aw = to_double(abs(w));
      if (aw < 1e-12) continue;
      long nmax = static_cast<long>(R / (two_pi * aw)) + 1;
      for (long n = 1; n <= nmax; ++n) {
        Complex<double> pt = Complex<double>(0, two_pi * n) * w;
        if (abs(pt) <= R) {
          out.points.push_back(pt);
          out.points.push_back(-pt);
        }
      }
    }
  }
  std::sort(out.points.begin(), out.points.end(), [](auto a, auto b) {
    double ra = to_double(abs(a)), rb = to_double(abs(b));
    if (ra != rb) return ra < rb;
    return std::atan2(a.im, a.re) < std::atan2(b.im, b.re);
  });
  return out;
}

// Stirling kernel H(p) = (1/p^2)(p/(e^p-1) - 1 + p/2); Taylor series
// sum B_{2n}/(2n)! p^{2n-2} near 0 (via zeta(2n), avoiding cancellation),
// direct formula for |p| >= 1.
template <class Real>
Complex<Real> H_kernel(const Complex<Real>& p) {
  double ap = to_double(abs(p));
  double two_pi_d = 2 * pi_v<double>();
  // pole proximity at 2 pi i n, n != 0
  double k = std::round(to_double(p.im) / two_pi_d);
  if (k != 0 && std::abs(to_double(p.re)) < 1e-6 &&
      std::abs(to_double(p.im) - k * two_pi_d) < 1e-6)
    fail(ErrorCode::domain, "H_kernel: p within 1e-6 of a pole 2 pi i n");
  if (ap >= 1.0) {
    Complex<Real> one(Real(1));
    return (p / (exp(p) - one) - one + p / Complex<Real>(Real(2))) / (p * p);
  }
  // c_j = B_{2j+2}/(2j+2)! = (-1)^j 2 zeta(2j+2) / (2 pi)^{2j+2}
  Real two_pi = 2 * pi_v<Real>();
  Complex<Real> p2 = p * p;
  Complex<Real> acc, term;
  Complex<Real> ppow(Real(1));
  Real scale = 1 / (two_pi * two_pi);
  Real eps = eps_v<Real>();
  for (unsigned j = 0;; ++j) {
    Real c = 2 * zeta_even<Real>(j + 1) * scale;
    term = Complex<Real>(j % 2 == 0 ? c : -c) * ppow;
    acc += term;
    if (to_double(abs(term)) < to_double(eps) * std::max(1.0, to_double(abs(acc))) || j > 400)
      break;
    ppow *= p2;
    scale /= two_pi * two_pi;
  }
  return acc;
}

// Maclaurin coefficients of G_f through order M-1 (Borel transform of the
// remainder series); exact-structure route used by the radius probes.
template <class Real = double>
TruncatedSeries<Complex<Real>> gf_taylor(const Expr& f, size_t M) {
  return borel_transform(series::em_remainder_series<Real>(f, M + 1));
}

}  // namespace borel
}  // namespace resurgia
