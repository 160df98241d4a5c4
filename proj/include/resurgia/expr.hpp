#pragma once

#include <cctype>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "resurgia/complex.hpp"
#include "resurgia/errors.hpp"
#include "resurgia/rational.hpp"
#include "resurgia/series.hpp"

namespace resurgia {
namespace funcs {

enum class NodeKind { Const, ImagUnit, Pi, Var, Add, Sub, Mul, Div, Pow, Neg, Fun };
enum class FunKind { Exp, Log, Sin, Cos };

inline const char* fun_name(FunKind f) {
  switch (f) {
    case FunKind::Exp: return "exp";
    case FunKind::Log: return "log";
    case FunKind::Sin: return "sin";
    case FunKind::Cos: return "cos";
  }
  return "?";
}

struct Node;
using NodePtr = std::shared_ptr<const Node>;

// Immutable expression tree; shared subtrees are fine, nothing mutates after
// construction.
struct Node {
  NodeKind kind;
  BigRational value;  // Const
  long exponent = 0;  // Pow
  FunKind fun = FunKind::Exp;
  NodePtr a, b;

  explicit Node(NodeKind k) : kind(k) {}
};

inline NodePtr make_const(BigRational v) {
  auto n = std::make_shared<Node>(NodeKind::Const);
  n->value = std::move(v);
  return n;
}
inline NodePtr make_leaf(NodeKind k) { return std::make_shared<Node>(k); }
inline NodePtr make_binary(NodeKind k, NodePtr a, NodePtr b) {
  auto n = std::make_shared<Node>(k);
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}
inline NodePtr make_unary(NodeKind k, NodePtr a) {
  auto n = std::make_shared<Node>(k);
  n->a = std::move(a);
  return n;
}
inline NodePtr make_pow(NodePtr base, long e) {
  auto n = std::make_shared<Node>(NodeKind::Pow);
  n->a = std::move(base);
  n->exponent = e;
  return n;
}
inline NodePtr make_fun(FunKind f, NodePtr arg) {
  auto n = std::make_shared<Node>(NodeKind::Fun);
  n->a = std::move(arg);
  n->fun = f;
  return n;
}

class Expr;
Expr parse_expr(const std::string& text);
std::string print_expr(const Expr& e);

// Value-semantics wrapper over the shared tree.
class Expr {
 public:
  Expr() : root_(make_leaf(NodeKind::Var)) {}
  explicit Expr(NodePtr n) : root_(std::move(n)) {}

  static Expr constant(BigRational v) { return Expr(make_const(std::move(v))); }
  static Expr constant(long v) { return Expr(make_const(BigRational(v))); }
  static Expr i() { return Expr(make_leaf(NodeKind::ImagUnit)); }
  static Expr pi() { return Expr(make_leaf(NodeKind::Pi)); }
  static Expr var() { return Expr(make_leaf(NodeKind::Var)); }
  static Expr fun(FunKind f, const Expr& arg) { return Expr(make_fun(f, arg.root_)); }

  const NodePtr& root() const { return root_; }
  const Node& node() const { return *root_; }

  friend Expr operator+(const Expr& a, const Expr& b) {
    return Expr(make_binary(NodeKind::Add, a.root_, b.root_));
  }
  friend Expr operator-(const Expr& a, const Expr& b) {
    return Expr(make_binary(NodeKind::Sub, a.root_, b.root_));
  }
  friend Expr operator*(const Expr& a, const Expr& b) {
    return Expr(make_binary(NodeKind::Mul, a.root_, b.root_));
  }
  friend Expr operator/(const Expr& a, const Expr& b) {
    return Expr(make_binary(NodeKind::Div, a.root_, b.root_));
  }
  friend Expr operator-(const Expr& a) { return Expr(make_unary(NodeKind::Neg, a.root_)); }
  Expr pow(long e) const { return Expr(make_pow(root_, e)); }

 private:
  NodePtr root_;
};

inline Expr exp(const Expr& e) { return Expr::fun(FunKind::Exp, e); }
inline Expr log(const Expr& e) { return Expr::fun(FunKind::Log, e); }
inline Expr sin(const Expr& e) { return Expr::fun(FunKind::Sin, e); }
inline Expr cos(const Expr& e) { return Expr::fun(FunKind::Cos, e); }

// ---------------------------------------------------------------------------
// Structural equality

inline bool equal(const NodePtr& a, const NodePtr& b) {
  if (a == b) return true;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case NodeKind::Const: return a->value == b->value;
    case NodeKind::ImagUnit:
    case NodeKind::Pi:
    case NodeKind::Var: return true;
    case NodeKind::Pow: return a->exponent == b->exponent && equal(a->a, b->a);
    case NodeKind::Neg: return equal(a->a, b->a);
    case NodeKind::Fun: return a->fun == b->fun && equal(a->a, b->a);
    default: return equal(a->a, b->a) && equal(a->b, b->b);
  }
}
inline bool equal(const Expr& a, const Expr& b) { return equal(a.root(), b.root()); }

// ---------------------------------------------------------------------------
// Parser (recursive descent over the grammar in the README)

namespace detail {

struct Parser {
  const std::string& s;
  size_t pos = 0;

  explicit Parser(const std::string& text) : s(text) {}

  [[noreturn]] void error(const std::string& msg, size_t at) {
    fail(ErrorCode::syntax, msg + " at byte " + std::to_string(at));
  }

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }

  NodePtr parse() {
    NodePtr e = expr();
    skip_ws();
    if (pos != s.size()) error("unexpected trailing input", pos);
    return e;
  }

  NodePtr expr() {
    NodePtr left = term();
    for (;;) {
      if (eat('+')) left = make_binary(NodeKind::Add, left, term());
      else if (eat('-')) left = make_binary(NodeKind::Sub, left, term());
      else return left;
    }
  }

  NodePtr term() {
    NodePtr left = unary();
    for (;;) {
      if (eat('*')) left = make_binary(NodeKind::Mul, left, unary());
      else if (eat('/')) left = fold_div(left, unary());
      else return left;
    }
  }

  // Rational literals "p/q" and negated literals fold to Const so the
  // canonical printer round-trips structurally.
  static NodePtr fold_div(NodePtr a, NodePtr b) {
    if (a->kind == NodeKind::Const && b->kind == NodeKind::Const) {
      if (b->value == 0) fail(ErrorCode::syntax, "constant division by zero");
      return make_const(a->value / b->value);
    }
    return make_binary(NodeKind::Div, std::move(a), std::move(b));
  }
  static NodePtr fold_neg(NodePtr a) {
    if (a->kind == NodeKind::Const) return make_const(-a->value);
    return make_unary(NodeKind::Neg, std::move(a));
  }

  NodePtr unary() {
    if (eat('-')) return fold_neg(unary());
    return power();
  }

  NodePtr power() {
    NodePtr base = atom();
    skip_ws();
    if (eat('^')) return make_pow(base, integer());
    return base;
  }

  long integer() {
    skip_ws();
    size_t start = pos;
    bool neg = false;
    if (pos < s.size() && s[pos] == '-') {
      neg = true;
      ++pos;
    }
    if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
      error("expected integer exponent", pos);
    long v = 0;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      v = v * 10 + (s[pos] - '0');
      if (v > 1000000) error("exponent too large", start);
      ++pos;
    }
    return neg ? -v : v;
  }

  NodePtr atom() {
    skip_ws();
    if (pos >= s.size()) error("unexpected end of input", pos);
    char c = s[pos];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    if (c == '(') {
      ++pos;
      NodePtr e = expr();
      if (!eat(')')) error("expected ')'", pos);
      return e;
    }
    error(std::string("unexpected character '") + c + "'", pos);
  }

  NodePtr number() {
    size_t start = pos;
    std::string digits;
    long frac_digits = -1;
    while (pos < s.size()) {
      char c = s[pos];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        digits.push_back(c);
        if (frac_digits >= 0) ++frac_digits;
        ++pos;
      } else if (c == '.' && frac_digits < 0) {
        frac_digits = 0;
        ++pos;
      } else {
        break;
      }
    }
    if (digits.empty()) error("malformed number", start);
    BigInt num(digits);
    BigInt den = 1;
    for (long k = 0; k < std::max<long>(frac_digits, 0); ++k) den *= 10;
    return make_const(BigRational(num, den));
  }

  NodePtr identifier() {
    size_t start = pos;
    std::string name;
    while (pos < s.size() && std::isalpha(static_cast<unsigned char>(s[pos])))
      name.push_back(s[pos++]);
    if (name == "x") return make_leaf(NodeKind::Var);
    if (name == "i") return make_leaf(NodeKind::ImagUnit);
    if (name == "pi") return make_leaf(NodeKind::Pi);
    FunKind f;
    if (name == "exp") f = FunKind::Exp;
    else if (name == "log") f = FunKind::Log;
    else if (name == "sin") f = FunKind::Sin;
    else if (name == "cos") f = FunKind::Cos;
    else fail(ErrorCode::unknown_ident,
              "unknown identifier '" + name + "' at byte " + std::to_string(start));
    if (!eat('(')) error("expected '(' after function name", pos);
    NodePtr arg = expr();
    if (!eat(')')) error("expected ')'", pos);
    return make_fun(f, arg);
  }
};

}  // namespace detail

inline Expr parse_expr(const std::string& text) {
  detail::Parser p(text);
  return Expr(p.parse());
}

// ---------------------------------------------------------------------------
// Canonical printer (minimal parentheses under the grammar precedence)

namespace detail {

enum Prec { P_ADD = 0, P_MUL = 1, P_UNARY = 2, P_POW = 3, P_ATOM = 4 };

inline int precedence(const Node& n) {
  switch (n.kind) {
    case NodeKind::Add:
    case NodeKind::Sub: return P_ADD;
    case NodeKind::Mul: return P_MUL;
    case NodeKind::Div: return P_MUL;
    case NodeKind::Neg: return P_UNARY;
    case NodeKind::Pow: return P_POW;
    case NodeKind::Const:
      // "p/q" prints as a division, "-p" as a unary minus; parenthesize at
      // the level those spellings reparse at.
      if (denominator(n.value) != 1) return P_MUL;
      return n.value < 0 ? P_UNARY : P_ATOM;
    default: return P_ATOM;
  }
}

inline void print_node(const NodePtr& n, std::string& out, int parent_prec);

inline void print_child(const NodePtr& n, std::string& out, int min_prec) {
  bool parens = precedence(*n) < min_prec;
  if (parens) out.push_back('(');
  print_node(n, out, 0);
  if (parens) out.push_back(')');
}

inline void print_node(const NodePtr& n, std::string& out, int) {
  switch (n->kind) {
    case NodeKind::Const: {
      BigInt num = numerator(n->value), den = denominator(n->value);
      if (num < 0) {
        out.push_back('-');
        num = -num;
      }
      out += num.str();
      if (den != 1) {
        out.push_back('/');
        out += den.str();
      }
      return;
    }
    case NodeKind::ImagUnit: out += "i"; return;
    case NodeKind::Pi: out += "pi"; return;
    case NodeKind::Var: out += "x"; return;
    case NodeKind::Add:
      print_child(n->a, out, P_ADD);
      out.push_back('+');
      print_child(n->b, out, P_MUL);
      return;
    case NodeKind::Sub:
      print_child(n->a, out, P_ADD);
      out.push_back('-');
      print_child(n->b, out, P_MUL);
      return;
    case NodeKind::Mul:
      print_child(n->a, out, P_MUL);
      out.push_back('*');
      print_child(n->b, out, P_UNARY);
      return;
    case NodeKind::Div:
      print_child(n->a, out, P_MUL);
      out.push_back('/');
      print_child(n->b, out, P_UNARY);
      return;
    case NodeKind::Neg:
      out.push_back('-');
      print_child(n->a, out, P_UNARY);
      return;
    case NodeKind::Pow:
      print_child(n->a, out, P_ATOM);
      out.push_back('^');
      out += std::to_string(n->exponent);
      return;
    case NodeKind::Fun:
      out += fun_name(n->fun);
      out.push_back('(');
      print_node(n->a, out, 0);
      out.push_back(')');
      return;
  }
}

}  // namespace detail

inline std::string print_expr(const Expr& e) {
  std::string out;
  detail::print_node(e.root(), out, 0);
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation

template <class Real>
Complex<Real> evaluate(const NodePtr& n, const Complex<Real>& z) {
  switch (n->kind) {
    case NodeKind::Const: return Complex<Real>(to_real<Real>(n->value));
    case NodeKind::ImagUnit: return Complex<Real>::i();
    case NodeKind::Pi: return Complex<Real>(pi_v<Real>());
    case NodeKind::Var: return z;
    case NodeKind::Add: return evaluate(n->a, z) + evaluate(n->b, z);
    case NodeKind::Sub: return evaluate(n->a, z) - evaluate(n->b, z);
    case NodeKind::Mul: return evaluate(n->a, z) * evaluate(n->b, z);
    case NodeKind::Div: {
      Complex<Real> den = evaluate(n->b, z);
      if (den == Complex<Real>())
        fail(ErrorCode::domain, "division by zero at evaluation point");
      return evaluate(n->a, z) / den;
    }
    case NodeKind::Neg: return -evaluate(n->a, z);
    case NodeKind::Pow: return pow_int(evaluate(n->a, z), n->exponent);
    case NodeKind::Fun: {
      Complex<Real> v = evaluate(n->a, z);
      switch (n->fun) {
        case FunKind::Exp: return exp(v);
        case FunKind::Log: return log(v);
        case FunKind::Sin: return sin(v);
        case FunKind::Cos: return cos(v);
      }
    }
  }
  fail(ErrorCode::invalid_argument, "corrupt expression node");
}

template <class Real>
Complex<Real> evaluate(const Expr& e, const Complex<Real>& z) {
  Complex<Real> v = evaluate(e.root(), z);
  if (!is_finite(v)) fail(ErrorCode::overflow, "non-finite value in evaluation");
  return v;
}

// ---------------------------------------------------------------------------
// Symbolic differentiation (exact within the closed class; light
// simplification keeps derivative trees small)

namespace detail {

inline bool is_const_val(const NodePtr& n, long v) {
  return n->kind == NodeKind::Const && n->value == v;
}

inline NodePtr smart_add(NodePtr a, NodePtr b) {
  if (is_const_val(a, 0)) return b;
  if (is_const_val(b, 0)) return a;
  if (a->kind == NodeKind::Const && b->kind == NodeKind::Const)
    return make_const(a->value + b->value);
  return make_binary(NodeKind::Add, std::move(a), std::move(b));
}
inline NodePtr smart_sub(NodePtr a, NodePtr b) {
  if (is_const_val(b, 0)) return a;
  if (a->kind == NodeKind::Const && b->kind == NodeKind::Const)
    return make_const(a->value - b->value);
  if (is_const_val(a, 0)) return make_unary(NodeKind::Neg, std::move(b));
  return make_binary(NodeKind::Sub, std::move(a), std::move(b));
}
inline NodePtr smart_mul(NodePtr a, NodePtr b) {
  if (is_const_val(a, 0) || is_const_val(b, 0)) return make_const(BigRational(0));
  if (is_const_val(a, 1)) return b;
  if (is_const_val(b, 1)) return a;
  if (a->kind == NodeKind::Const && b->kind == NodeKind::Const)
    return make_const(a->value * b->value);
  return make_binary(NodeKind::Mul, std::move(a), std::move(b));
}
inline NodePtr smart_div(NodePtr a, NodePtr b) {
  if (is_const_val(a, 0)) return a;
  if (is_const_val(b, 1)) return a;
  return make_binary(NodeKind::Div, std::move(a), std::move(b));
}
inline NodePtr smart_pow(NodePtr base, long e) {
  if (e == 0) return make_const(BigRational(1));
  if (e == 1) return base;
  return make_pow(std::move(base), e);
}

inline NodePtr diff(const NodePtr& n) {
  switch (n->kind) {
    case NodeKind::Const:
    case NodeKind::ImagUnit:
    case NodeKind::Pi: return make_const(BigRational(0));
    case NodeKind::Var: return make_const(BigRational(1));
    case NodeKind::Add: return smart_add(diff(n->a), diff(n->b));
    case NodeKind::Sub: return smart_sub(diff(n->a), diff(n->b));
    case NodeKind::Mul:
      return smart_add(smart_mul(diff(n->a), n->b), smart_mul(n->a, diff(n->b)));
    case NodeKind::Div:
      // (a/b)' = a'/b - a b'/b^2
      return smart_sub(smart_div(diff(n->a), n->b),
                       smart_div(smart_mul(n->a, diff(n->b)), make_pow(n->b, 2)));
    case NodeKind::Neg: return make_unary(NodeKind::Neg, diff(n->a));
    case NodeKind::Pow:
      return smart_mul(make_const(BigRational(n->exponent)),
                       smart_mul(smart_pow(n->a, n->exponent - 1), diff(n->a)));
    case NodeKind::Fun: {
      NodePtr da = diff(n->a);
      switch (n->fun) {
        case FunKind::Exp: return smart_mul(da, make_fun(FunKind::Exp, n->a));
        case FunKind::Log: return smart_div(da, n->a);
        case FunKind::Sin: return smart_mul(da, make_fun(FunKind::Cos, n->a));
        case FunKind::Cos:
          return make_unary(NodeKind::Neg, smart_mul(da, make_fun(FunKind::Sin, n->a)));
      }
    }
  }
  fail(ErrorCode::invalid_argument, "corrupt expression node");
}

}  // namespace detail

inline Expr differentiate(const Expr& e) { return Expr(detail::diff(e.root())); }

// Substitute the variable by another expression (composition).
inline NodePtr substitute(const NodePtr& n, const NodePtr& repl) {
  switch (n->kind) {
    case NodeKind::Var: return repl;
    case NodeKind::Const:
    case NodeKind::ImagUnit:
    case NodeKind::Pi: return n;
    case NodeKind::Pow: return make_pow(substitute(n->a, repl), n->exponent);
    case NodeKind::Neg: return make_unary(NodeKind::Neg, substitute(n->a, repl));
    case NodeKind::Fun: return make_fun(n->fun, substitute(n->a, repl));
    default: return make_binary(n->kind, substitute(n->a, repl), substitute(n->b, repl));
  }
}
inline Expr substitute(const Expr& e, const Expr& repl) {
  return Expr(substitute(e.root(), repl.root()));
}

// ---------------------------------------------------------------------------
// Local Taylor expansion by structural recursion through series arithmetic.
// The workhorse for high-order derivatives: avoids repeated symbolic
// differentiation entirely.

namespace detail {

template <class Real>
using CSeries = TruncatedSeries<Complex<Real>>;

// sin/cos of a zero-constant series, jointly: S' = B'C, C' = -B'S.
template <class Real>
std::pair<CSeries<Real>, CSeries<Real>> sincos_series(const CSeries<Real>& b) {
  size_t m = b.order();
  CSeries<Real> s(b.var, m), c(b.var, m);
  if (m == 0) return {s, c};
  c.c[0] = Complex<Real>(Real(1));
  for (size_t n = 1; n < m; ++n) {
    Complex<Real> accs, accc;
    for (size_t k = 1; k <= n; ++k) {
      Complex<Real> kb = Complex<Real>(Real(static_cast<long>(k))) * b.c[k];
      accs += kb * c.c[n - k];
      accc -= kb * s.c[n - k];
    }
    Complex<Real> inv_n = Complex<Real>(Real(1) / Real(static_cast<long>(n)));
    s.c[n] = accs * inv_n;
    c.c[n] = accc * inv_n;
  }
  return {s, c};
}

template <class Real>
CSeries<Real> taylor_node(const NodePtr& n, const Complex<Real>& x0, size_t m) {
  switch (n->kind) {
    case NodeKind::Const:
      return CSeries<Real>::constant("u", m, Complex<Real>(to_real<Real>(n->value)));
    case NodeKind::ImagUnit: return CSeries<Real>::constant("u", m, Complex<Real>::i());
    case NodeKind::Pi: return CSeries<Real>::constant("u", m, Complex<Real>(pi_v<Real>()));
    case NodeKind::Var: {
      CSeries<Real> s("u", m);
      if (m > 0) s.c[0] = x0;
      if (m > 1) s.c[1] = Complex<Real>(Real(1));
      return s;
    }
    case NodeKind::Add: return taylor_node<Real>(n->a, x0, m) + taylor_node<Real>(n->b, x0, m);
    case NodeKind::Sub: return taylor_node<Real>(n->a, x0, m) - taylor_node<Real>(n->b, x0, m);
    case NodeKind::Mul: return taylor_node<Real>(n->a, x0, m) * taylor_node<Real>(n->b, x0, m);
    case NodeKind::Div: {
      auto den = taylor_node<Real>(n->b, x0, m);
      if (m > 0 && den.c[0] == Complex<Real>())
        fail(ErrorCode::domain, "Taylor expansion at a pole");
      return taylor_node<Real>(n->a, x0, m) / den;
    }
    case NodeKind::Neg: return -taylor_node<Real>(n->a, x0, m);
    case NodeKind::Pow: {
      auto base = taylor_node<Real>(n->a, x0, m);
      if (n->exponent < 0 && m > 0 && base.c[0] == Complex<Real>())
        fail(ErrorCode::domain, "Taylor expansion at a pole");
      return pow_int(base, n->exponent);
    }
    case NodeKind::Fun: {
      auto a = taylor_node<Real>(n->a, x0, m);
      if (m == 0) return a;
      Complex<Real> a0 = a.c[0];
      auto shifted = a;
      shifted.c[0] = Complex<Real>();
      switch (n->fun) {
        case FunKind::Exp: return exp(a0) * exp_series(shifted);
        case FunKind::Log: {
          if (a0 == Complex<Real>())
            fail(ErrorCode::domain, "Taylor expansion at a logarithmic singularity");
          Complex<Real> inv0 = Complex<Real>(Real(1)) / a0;
          auto rel = inv0 * shifted;  // A/a0 - 1 has zero constant term
          auto out = log1p_series(rel);
          out.c[0] = log(a0);  // principal branch; errors on the cut
          return out;
        }
        case FunKind::Sin: {
          auto [s, c] = sincos_series<Real>(shifted);
          return sin(a0) * c + cos(a0) * s;
        }
        case FunKind::Cos: {
          auto [s, c] = sincos_series<Real>(shifted);
          return cos(a0) * c - sin(a0) * s;
        }
      }
    }
  }
  fail(ErrorCode::invalid_argument, "corrupt expression node");
}

}  // namespace detail

// Taylor coefficients of e around x0 through order m-1 (series in u = x-x0).
template <class Real>
TruncatedSeries<Complex<Real>> taylor(const Expr& e, const Complex<Real>& x0, size_t m) {
  return detail::taylor_node<Real>(e.root(), x0, m);
}

}  // namespace funcs

using funcs::Expr;
using funcs::parse_expr;
using funcs::print_expr;

}  // namespace resurgia
