#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

#include "resurgia/expr.hpp"
#include "resurgia/rational.hpp"

namespace resurgia {
namespace funcs {

// ---------------------------------------------------------------------------
// Exact polynomials over the Gaussian rationals

using GPoly = std::vector<GaussianRational>;  // coefficient of x^k at index k

namespace poly {

inline void trim(GPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}
inline long degree(const GPoly& p) { return static_cast<long>(p.size()) - 1; }

inline GPoly add(const GPoly& a, const GPoly& b) {
  GPoly out(std::max(a.size(), b.size()));
  for (size_t k = 0; k < out.size(); ++k) {
    if (k < a.size()) out[k] = out[k] + a[k];
    if (k < b.size()) out[k] = out[k] + b[k];
  }
  trim(out);
  return out;
}
inline GPoly neg(const GPoly& a) {
  GPoly out(a);
  for (auto& c : out) c = -c;
  return out;
}
inline GPoly mul(const GPoly& a, const GPoly& b) {
  if (a.empty() || b.empty()) return {};
  GPoly out(a.size() + b.size() - 1);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) out[i + j] = out[i + j] + a[i] * b[j];
  trim(out);
  return out;
}
inline GPoly scale(const GPoly& a, const GaussianRational& s) {
  GPoly out(a);
  for (auto& c : out) c = c * s;
  trim(out);
  return out;
}
inline GPoly derivative(const GPoly& a) {
  if (a.size() <= 1) return {};
  GPoly out(a.size() - 1);
  for (size_t k = 1; k < a.size(); ++k)
    out[k - 1] = a[k] * GaussianRational(BigRational(BigInt(k)));
  return out;
}

// Euclidean division, exact.
inline std::pair<GPoly, GPoly> divmod(GPoly a, const GPoly& b) {
  if (b.empty()) fail(ErrorCode::domain, "polynomial division by zero");
  GPoly q(a.size() > b.size() ? a.size() - b.size() + 1 : 1);
  while (degree(a) >= degree(b)) {
    long shift = degree(a) - degree(b);
    GaussianRational c = a.back() / b.back();
    q[shift] = q[shift] + c;
    for (size_t k = 0; k < b.size(); ++k)
      a[shift + k] = a[shift + k] - c * b[k];
    trim(a);
  }
  trim(q);
  return {q, a};
}

inline GPoly monic(GPoly a) {
  trim(a);
  if (a.empty()) return a;
  GaussianRational lead = a.back();
  for (auto& c : a) c = c / lead;
  return a;
}

inline GPoly gcd(GPoly a, GPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    auto [q, r] = divmod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

// Yun's squarefree decomposition: p = prod factors[k]^{k+1} (up to constant).
inline std::vector<GPoly> squarefree_decomposition(const GPoly& p) {
  std::vector<GPoly> out;
  GPoly a = monic(p);
  if (degree(a) <= 0) return out;
  GPoly d = derivative(a);
  GPoly g = gcd(a, d);
  GPoly w = divmod(a, g).first;
  GPoly y = divmod(d, g).first;
  GPoly z = add(y, neg(derivative(w)));
  while (degree(w) > 0 || !z.empty()) {
    GPoly f = gcd(w, z);
    out.push_back(f);
    if (degree(w) <= 0) break;
    w = divmod(w, f).first;
    y = divmod(z, f).first;
    z = add(y, neg(derivative(w)));
    if (degree(w) == 0 && z.empty()) break;
  }
  while (!out.empty() && degree(out.back()) <= 0) out.pop_back();
  return out;
}

template <class Real>
Complex<Real> eval(const GPoly& p, const Complex<Real>& z) {
  Complex<Real> acc;
  for (size_t k = p.size(); k-- > 0;) acc = acc * z + to_complex<Real>(p[k]);
  return acc;
}

// Durand-Kerner in double for starts, then Newton in Real100 on the exact
// polynomial. Requires a squarefree input (simple roots).
std::vector<Complex<double>> roots_squarefree(const GPoly& p);

inline std::vector<Complex<double>> roots_squarefree(const GPoly& p_in) {
  GPoly p = monic(p_in);
  long deg = degree(p);
  if (deg > 16) fail(ErrorCode::unsupported, "polynomial degree above the cap of 16");
  if (deg <= 0) return {};
  using Cd = Complex<double>;
  std::vector<Cd> z(static_cast<size_t>(deg));
  // standard staggered starts on a circle of the coefficient-based radius
  double radius = 1.0;
  for (long k = 0; k < deg; ++k) {
    double mag = abs(to_complex<double>(p[static_cast<size_t>(k)]));
    radius = std::max(radius, 1.0 + mag);
  }
  for (long k = 0; k < deg; ++k)
    z[static_cast<size_t>(k)] =
        polar(radius * 0.7, 0.4 + 2 * pi_v<double>() * double(k) / double(deg));
  for (int it = 0; it < 500; ++it) {
    double worst = 0;
    for (long k = 0; k < deg; ++k) {
      Cd num = eval(p, z[static_cast<size_t>(k)]);
      Cd den(1.0);
      for (long j = 0; j < deg; ++j)
        if (j != k) den *= z[static_cast<size_t>(k)] - z[static_cast<size_t>(j)];
      Cd delta = num / den;
      z[static_cast<size_t>(k)] -= delta;
      worst = std::max(worst, abs(delta));
    }
    if (worst < 1e-13) break;
  }
  // Newton polish at 100 digits; certify via the last correction size
  GPoly dp = derivative(p);
  for (auto& r : z) {
    Complex<Real100> x(Real100(r.re), Real100(r.im));
    Real100 last = 1;
    for (int it = 0; it < 60; ++it) {
      Complex<Real100> step = eval(p, x) / eval(dp, x);
      x -= step;
      last = abs(step);
      if (last < Real100("1e-40")) break;
    }
    if (!(last <= Real100("1e-13") * (1 + abs(x))))
      fail(ErrorCode::tolerance, "root refinement failed the 1e-12 certification");
    r = Cd(to_double(x.re), to_double(x.im));
  }
  return z;
}

}  // namespace poly

// ---------------------------------------------------------------------------
// Polynomial extraction from expression trees (exact; fails on Pi or
// transcendental structure)

namespace detail {

inline std::optional<GPoly> extract_poly(const NodePtr& n) {
  switch (n->kind) {
    case NodeKind::Const: return GPoly{GaussianRational(n->value)};
    case NodeKind::ImagUnit: return GPoly{GaussianRational(BigRational(0), BigRational(1))};
    case NodeKind::Pi: return std::nullopt;
    case NodeKind::Var: return GPoly{GaussianRational(), GaussianRational(BigRational(1))};
    case NodeKind::Add: {
      auto a = extract_poly(n->a), b = extract_poly(n->b);
      if (!a || !b) return std::nullopt;
      return poly::add(*a, *b);
    }
    case NodeKind::Sub: {
      auto a = extract_poly(n->a), b = extract_poly(n->b);
      if (!a || !b) return std::nullopt;
      return poly::add(*a, poly::neg(*b));
    }
    case NodeKind::Mul: {
      auto a = extract_poly(n->a), b = extract_poly(n->b);
      if (!a || !b) return std::nullopt;
      if (poly::degree(*a) + poly::degree(*b) > 64) return std::nullopt;
      return poly::mul(*a, *b);
    }
    case NodeKind::Div: {
      auto a = extract_poly(n->a), b = extract_poly(n->b);
      if (!a || !b) return std::nullopt;
      if (poly::degree(*b) != 0 || b->empty()) return std::nullopt;
      return poly::scale(*a, GaussianRational(BigRational(1)) / (*b)[0]);
    }
    case NodeKind::Neg: {
      auto a = extract_poly(n->a);
      if (!a) return std::nullopt;
      return poly::neg(*a);
    }
    case NodeKind::Pow: {
      if (n->exponent < 0) return std::nullopt;
      auto a = extract_poly(n->a);
      if (!a) return std::nullopt;
      if (poly::degree(*a) * n->exponent > 64) return std::nullopt;
      GPoly acc{GaussianRational(BigRational(1))};
      for (long k = 0; k < n->exponent; ++k) acc = poly::mul(acc, *a);
      return acc;
    }
    case NodeKind::Fun: return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Singularity records

enum class SingKind { Pole, Logarithmic, AlgebraicPower, Mixed };

struct SingularityRecord {
  Complex<double> location;      // lambda, certified to 1e-12
  std::optional<GaussianRational> exact_location;  // when the factor is affine
  SingKind kind = SingKind::Pole;
  long pole_order = 0;           // for Pole
  BigRational alpha{0};          // alpha_lambda (= -pole_order for poles)
  int beta = 0;                  // 0 or 1 (log exponent)
  std::optional<Expr> germ;      // h_lambda as an Expr in u, when constructible
  // branch bookkeeping for affine branch arguments c*(x - lambda), c > 0:
  bool affine_branch = false;
  const Node* branch_node = nullptr;  // the Log node carrying the cut
};

struct Rectangle {
  double re_lo = -1e300, re_hi = 1e300, im_lo = -1e300, im_hi = 1e300;
  bool contains(const Complex<double>& z) const {
    return z.re >= re_lo && z.re <= re_hi && z.im >= im_lo && z.im <= im_hi;
  }
  static Rectangle strip(double lo = 0, double hi = 1) {
    Rectangle r;
    r.re_lo = lo;
    r.re_hi = hi;
    return r;
  }
  static Rectangle disk_bound(double R) {  // bounding box of |z| <= R
    Rectangle r;
    r.re_lo = -R; r.re_hi = R; r.im_lo = -R; r.im_hi = R;
    return r;
  }
};

namespace detail {

// Does the Exp node match exp(r * log(g)) with rational r? Returns (r, g-log-node).
inline std::optional<std::pair<BigRational, NodePtr>> match_power_pattern(const NodePtr& exp_node) {
  const NodePtr& arg = exp_node->a;
  auto as_rational = [](const NodePtr& n) -> std::optional<BigRational> {
    if (n->kind == NodeKind::Const) return n->value;
    if (n->kind == NodeKind::Neg && n->a->kind == NodeKind::Const) return -n->a->value;
    return std::nullopt;
  };
  if (arg->kind == NodeKind::Fun && arg->fun == FunKind::Log)
    return std::make_pair(BigRational(1), arg);
  if (arg->kind == NodeKind::Mul) {
    auto c = as_rational(arg->a);
    if (c && arg->b->kind == NodeKind::Fun && arg->b->fun == FunKind::Log)
      return std::make_pair(*c, arg->b);
    c = as_rational(arg->b);
    if (c && arg->a->kind == NodeKind::Fun && arg->a->fun == FunKind::Log)
      return std::make_pair(*c, arg->a);
  }
  if (arg->kind == NodeKind::Div) {
    auto c = as_rational(arg->b);
    if (c && *c != 0 && arg->a->kind == NodeKind::Fun && arg->a->fun == FunKind::Log)
      return std::make_pair(BigRational(1) / *c, arg->a);
  }
  if (arg->kind == NodeKind::Neg && arg->a->kind == NodeKind::Fun && arg->a->fun == FunKind::Log)
    return std::make_pair(BigRational(-1), arg->a);
  return std::nullopt;
}

struct SingularEvent {
  enum Type { PoleFromDiv, LogBranch, PowerBranch } type;
  GPoly zero_poly;     // zeros of this polynomial are the singular points
  long order_factor;   // |exponent| multiplier for poles
  BigRational power;   // r for PowerBranch
  NodePtr log_node;    // for branch kinds
  NodePtr div_denominator;  // for pole kind
};

// Zeros of the expression `n` as an exact polynomial zero set; exp factors
// are dropped (never zero), products recurse.
inline std::optional<GPoly> zero_set(const NodePtr& n) {
  if (n->kind == NodeKind::Mul) {
    auto a = zero_set(n->a), b = zero_set(n->b);
    if (!a || !b) return std::nullopt;
    return poly::mul(*a, *b);
  }
  if (n->kind == NodeKind::Fun && n->fun == FunKind::Exp)
    return GPoly{GaussianRational(BigRational(1))};
  if (n->kind == NodeKind::Neg) return zero_set(n->a);
  if (n->kind == NodeKind::Pow && n->exponent > 0) {
    auto a = zero_set(n->a);
    if (!a) return std::nullopt;
    GPoly acc{GaussianRational(BigRational(1))};
    for (long k = 0; k < n->exponent; ++k) acc = poly::mul(acc, *a);
    return acc;
  }
  return extract_poly(n);
}

inline void collect_events(const NodePtr& n, std::vector<SingularEvent>& out) {
  switch (n->kind) {
    case NodeKind::Const:
    case NodeKind::ImagUnit:
    case NodeKind::Pi:
    case NodeKind::Var: return;
    case NodeKind::Div: {
      collect_events(n->a, out);
      collect_events(n->b, out);
      auto den = zero_set(n->b);
      if (!den)
        fail(ErrorCode::unsupported,
             "singularities: denominator zero set is not polynomial in the supported class");
      if (poly::degree(*den) > 0)
        out.push_back({SingularEvent::PoleFromDiv, *den, 1, BigRational(0), nullptr, n->b});
      return;
    }
    case NodeKind::Pow: {
      if (n->exponent < 0) {
        auto base = zero_set(n->a);
        if (!base)
          fail(ErrorCode::unsupported,
               "singularities: negative power of a non-polynomial base");
        if (poly::degree(*base) > 0)
          out.push_back({SingularEvent::PoleFromDiv, *base, -n->exponent, BigRational(0),
                         nullptr, n->a});
      }
      collect_events(n->a, out);
      return;
    }
    case NodeKind::Fun: {
      if (n->fun == FunKind::Exp) {
        if (auto pat = match_power_pattern(n)) {
          auto [r, log_node] = *pat;
          auto g = zero_set(log_node->a);
          if (!g)
            fail(ErrorCode::unsupported,
                 "singularities: branch-point argument is not polynomial");
          if (poly::degree(*g) > 0)
            out.push_back({SingularEvent::PowerBranch, *g, 1, r, log_node, nullptr});
          collect_events(log_node->a, out);  // walk inside g, skip the log itself
          return;
        }
      }
      if (n->fun == FunKind::Log) {
        auto g = zero_set(n->a);
        if (!g)
          fail(ErrorCode::unsupported,
               "singularities: logarithm argument zero set is not polynomial");
        if (poly::degree(*g) > 0)
          out.push_back({SingularEvent::LogBranch, *g, 1, BigRational(0), n, nullptr});
      }
      collect_events(n->a, out);
      return;
    }
    case NodeKind::Neg: collect_events(n->a, out); return;
    default:
      collect_events(n->a, out);
      collect_events(n->b, out);
      return;
  }
}

// Replace one specific node occurrence (by identity) with another tree.
inline NodePtr replace_node(const NodePtr& n, const NodePtr& target, const NodePtr& repl) {
  if (n == target) return repl;
  switch (n->kind) {
    case NodeKind::Const:
    case NodeKind::ImagUnit:
    case NodeKind::Pi:
    case NodeKind::Var: return n;
    case NodeKind::Pow: {
      auto a = replace_node(n->a, target, repl);
      return a == n->a ? n : make_pow(a, n->exponent);
    }
    case NodeKind::Neg: {
      auto a = replace_node(n->a, target, repl);
      return a == n->a ? n : make_unary(NodeKind::Neg, a);
    }
    case NodeKind::Fun: {
      auto a = replace_node(n->a, target, repl);
      return a == n->a ? n : make_fun(n->fun, a);
    }
    default: {
      auto a = replace_node(n->a, target, repl);
      auto b = replace_node(n->b, target, repl);
      return (a == n->a && b == n->b) ? n : make_binary(n->kind, a, b);
    }
  }
}

// Affine root of a degree-1 factor of `zero_poly` nearest to lambda, exact.
// Returns (lambda_exact, leading_coefficient) when the factor is affine.
inline std::optional<std::pair<GaussianRational, GaussianRational>> affine_root(
    const GPoly& p, const Complex<double>& lam) {
  if (poly::degree(p) != 1) return std::nullopt;
  // p = c1 x + c0, root = -c0/c1
  GaussianRational root = -(p[0] / p[1]);
  Complex<double> rd = to_complex<double>(root);
  if (abs(rd - lam) > 1e-9) return std::nullopt;
  return std::make_pair(root, p[1]);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// singularities(): complete list inside a rectangle, exact structure plus
// certified numeric locations.

inline std::vector<SingularityRecord> singularities(const Expr& f, const Rectangle& region) {
  std::vector<detail::SingularEvent> events;
  detail::collect_events(f.root(), events);

  struct Hit {
    Complex<double> loc;
    detail::SingularEvent* ev;
    long multiplicity;
    std::optional<GaussianRational> exact;
  };
  std::vector<Hit> hits;
  for (auto& ev : events) {
    auto factors = poly::squarefree_decomposition(ev.zero_poly);
    for (size_t k = 0; k < factors.size(); ++k) {
      if (poly::degree(factors[k]) <= 0) continue;
      std::optional<GaussianRational> exact;
      if (poly::degree(factors[k]) == 1) exact = -(factors[k][0] / factors[k][1]);
      for (auto& r : poly::roots_squarefree(factors[k])) {
        if (!region.contains(r)) continue;
        hits.push_back({r, &ev, static_cast<long>(k + 1), exact});
      }
    }
  }

  // merge hits at the same location
  std::vector<SingularityRecord> records;
  std::vector<bool> used(hits.size(), false);
  for (size_t i = 0; i < hits.size(); ++i) {
    if (used[i]) continue;
    std::vector<size_t> group{i};
    for (size_t j = i + 1; j < hits.size(); ++j)
      if (!used[j] && abs(hits[j].loc - hits[i].loc) < 1e-9) {
        used[j] = true;
        group.push_back(j);
      }
    SingularityRecord rec;
    rec.location = hits[i].loc;
    rec.exact_location = hits[i].exact;
    if (group.size() > 1) {
      rec.kind = SingKind::Mixed;
      records.push_back(rec);
      continue;
    }
    const Hit& h = hits[i];
    switch (h.ev->type) {
      case detail::SingularEvent::PoleFromDiv: {
        rec.kind = SingKind::Pole;
        rec.pole_order = h.multiplicity * h.ev->order_factor;
        rec.alpha = BigRational(-rec.pole_order);
        rec.beta = 0;
        break;
      }
      case detail::SingularEvent::LogBranch: {
        rec.kind = SingKind::Logarithmic;
        rec.alpha = BigRational(0);
        rec.beta = 1;
        rec.branch_node = h.ev->log_node.get();
        break;
      }
      case detail::SingularEvent::PowerBranch: {
        BigRational a = h.ev->power * BigRational(h.multiplicity);
        if (denominator(a) == 1) {
          // integer power through exp(r log g): pole or regular point
          BigInt ai = numerator(a);
          if (ai >= 0) continue;  // regular
          rec.kind = SingKind::Pole;
          rec.pole_order = -ai.convert_to<long>();
          rec.alpha = a;
          rec.beta = 0;
        } else {
          rec.kind = SingKind::AlgebraicPower;
          rec.alpha = a;
          rec.beta = 0;
          rec.branch_node = h.ev->log_node.get();
        }
        break;
      }
    }
    // germ handle and affine-branch bookkeeping
    if (rec.kind == SingKind::Logarithmic || rec.kind == SingKind::AlgebraicPower) {
      auto aff = detail::affine_root(h.ev->zero_poly, rec.location);
      if (aff && aff->second.is_real() && aff->second.re > 0) rec.affine_branch = true;
      if (aff) {
        GaussianRational lam = aff->first;
        Expr lam_expr = Expr::constant(lam.re) + Expr::i() * Expr::constant(lam.im);
        Expr u = Expr::var();
        if (rec.kind == SingKind::Logarithmic) {
          // f depends affinely on the log node in the supported shapes, so
          // h(u) = m * (f[log -> log+1] - f)(lambda + u).
          NodePtr ln = h.ev->log_node;
          NodePtr bumped = detail::replace_node(
              f.root(), ln, make_binary(NodeKind::Add, ln, make_const(BigRational(1))));
          Expr coeff = Expr(bumped) - Expr(f.root());
          rec.germ = Expr::constant(h.multiplicity) * substitute(coeff, u + lam_expr);
        } else {
          // h(u) = f(lambda+u) * u^{-alpha}, faithful on and near the ray.
          Expr fl = substitute(Expr(f.root()), u + lam_expr);
          rec.germ = fl * exp(-(Expr::constant(rec.alpha) * log(u)));
        }
      }
    }
    records.push_back(rec);
  }
  std::sort(records.begin(), records.end(), [](const auto& a, const auto& b) {
    if (a.location.re != b.location.re) return a.location.re < b.location.re;
    return a.location.im < b.location.im;
  });
  return records;
}

// ---------------------------------------------------------------------------
// Symbolic antiderivative (narrow pattern set: enough for the
// integration-by-parts path of the summation drivers).

namespace detail {

inline bool depends_on_var(const NodePtr& n) {
  switch (n->kind) {
    case NodeKind::Var: return true;
    case NodeKind::Const:
    case NodeKind::ImagUnit:
    case NodeKind::Pi: return false;
    case NodeKind::Pow:
    case NodeKind::Neg:
    case NodeKind::Fun: return depends_on_var(n->a);
    default: return depends_on_var(n->a) || depends_on_var(n->b);
  }
}

inline Expr gaussian_to_expr(const GaussianRational& q) {
  if (q.im == 0) return Expr::constant(q.re);
  return Expr::constant(q.re) + Expr::i() * Expr::constant(q.im);
}

// Affine decomposition c1 * x + c0 with c1 != 0.
inline std::optional<std::pair<GaussianRational, GaussianRational>> as_affine(const NodePtr& n) {
  auto p = extract_poly(n);
  if (!p || poly::degree(*p) != 1) return std::nullopt;
  return std::make_pair((*p)[1], (*p)[0]);
}

inline std::optional<Expr> antiderivative_node(const NodePtr& n);

inline std::optional<Expr> antiderivative_affine_fun(const NodePtr& n) {
  auto aff = as_affine(n->a);
  if (!aff) return std::nullopt;
  Expr inv_c1 = gaussian_to_expr(GaussianRational(BigRational(1)) / aff->first);
  Expr arg(n->a);
  switch (n->fun) {
    case FunKind::Exp: return inv_c1 * exp(arg);
    case FunKind::Sin: return -(inv_c1 * cos(arg));
    case FunKind::Cos: return inv_c1 * sin(arg);
    case FunKind::Log: return inv_c1 * (arg * log(arg) - arg);
  }
  return std::nullopt;
}

inline std::optional<Expr> antiderivative_node(const NodePtr& n) {
  if (!depends_on_var(n)) return Expr(n) * Expr::var();
  switch (n->kind) {
    case NodeKind::Var: return Expr::constant(BigRational(1, 2)) * Expr::var().pow(2);
    case NodeKind::Add: {
      auto a = antiderivative_node(n->a), b = antiderivative_node(n->b);
      if (!a || !b) return std::nullopt;
      return *a + *b;
    }
    case NodeKind::Sub: {
      auto a = antiderivative_node(n->a), b = antiderivative_node(n->b);
      if (!a || !b) return std::nullopt;
      return *a - *b;
    }
    case NodeKind::Neg: {
      auto a = antiderivative_node(n->a);
      if (!a) return std::nullopt;
      return -*a;
    }
    case NodeKind::Mul: {
      if (!depends_on_var(n->a)) {
        auto b = antiderivative_node(n->b);
        if (!b) return std::nullopt;
        return Expr(n->a) * *b;
      }
      if (!depends_on_var(n->b)) {
        auto a = antiderivative_node(n->a);
        if (!a) return std::nullopt;
        return Expr(n->b) * *a;
      }
      return std::nullopt;
    }
    case NodeKind::Div: {
      if (!depends_on_var(n->b)) {
        auto a = antiderivative_node(n->a);
        if (!a) return std::nullopt;
        return *a / Expr(n->b);
      }
      if (!depends_on_var(n->a)) {
        // c / denominator with affine or affine-power denominator
        if (auto aff = as_affine(n->b)) {
          Expr inv_c1 = gaussian_to_expr(GaussianRational(BigRational(1)) / aff->first);
          return Expr(n->a) * inv_c1 * log(Expr(n->b));
        }
        if (n->b->kind == NodeKind::Pow && n->b->exponent > 1) {
          if (auto aff = as_affine(n->b->a)) {
            long m = n->b->exponent;
            Expr inv = gaussian_to_expr(GaussianRational(BigRational(1)) / aff->first) *
                       Expr::constant(BigRational(1) / BigRational(BigInt(1 - m)));
            return Expr(n->a) * inv * Expr(n->b->a).pow(1 - m);
          }
        }
      }
      return std::nullopt;
    }
    case NodeKind::Pow: {
      if (auto aff = as_affine(n->a)) {
        long e = n->exponent;
        if (e == -1) {
          Expr inv_c1 = gaussian_to_expr(GaussianRational(BigRational(1)) / aff->first);
          return inv_c1 * log(Expr(n->a));
        }
        Expr scale = gaussian_to_expr(GaussianRational(BigRational(1)) / aff->first) *
                     Expr::constant(BigRational(1) / BigRational(BigInt(e + 1)));
        return scale * Expr(n->a).pow(e + 1);
      }
      return std::nullopt;
    }
    case NodeKind::Fun: return antiderivative_affine_fun(n);
    default: return std::nullopt;
  }
}

}  // namespace detail

// Antiderivative within the class, for the pattern set {polynomial in affine
// pieces, c*(affine)^n, c/(affine)^m, exp/sin/cos/log of affine}. Returns
// nullopt when the pattern is outside that set.
inline std::optional<Expr> antiderivative(const Expr& e) {
  return detail::antiderivative_node(e.root());
}

}  // namespace funcs
}  // namespace resurgia
