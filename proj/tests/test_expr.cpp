#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "resurgia/expr.hpp"

using namespace resurgia;
using namespace resurgia::funcs;
using C = Complex<double>;

namespace {

C ev(const Expr& e, C z) { return evaluate(e, z); }
C ev(const std::string& s, C z) { return evaluate(parse_expr(s), z); }

// random tree generator for the round-trip property; avoids the two spellings
// the parser canonicalizes (const/const division, negated constants) so
// structural equality is exact
Expr random_tree(std::mt19937& rng, int depth) {
  std::uniform_int_distribution<int> leaf(0, 3), op(0, 6), small(1, 9);
  auto leaf_expr = [&]() -> Expr {
    switch (leaf(rng)) {
      case 0: return Expr::var();
      case 1: return Expr::i();
      case 2: return Expr::pi();
      default: return Expr::constant(BigRational(small(rng), small(rng)));
    }
  };
  if (depth <= 0) return leaf_expr();
  auto sub = [&]() { return random_tree(rng, depth - 1); };
  switch (op(rng)) {
    case 0: return sub() + sub();
    case 1: return sub() - sub();
    case 2: return sub() * sub();
    case 3: {
      Expr num = sub();
      return num / (Expr::var() + Expr::constant(small(rng)));  // keep denominator non-constant
    }
    case 4: return -(Expr::var() * sub());  // Neg of a non-constant
    case 5: return sub().pow(small(rng) % 5 - 2);
    default: {
      FunKind f = static_cast<FunKind>(std::uniform_int_distribution<int>(0, 3)(rng));
      return Expr::fun(f, sub());
    }
  }
}

}  // namespace

TEST_CASE("parse: grammar identities") {
  Expr p = parse_expr("x^2");
  REQUIRE(p.node().kind == NodeKind::Pow);
  CHECK(p.node().exponent == 2);
  CHECK(p.node().a->kind == NodeKind::Var);

  Expr q = parse_expr("1/(x-2)");
  REQUIRE(q.node().kind == NodeKind::Div);
  CHECK(q.node().b->kind == NodeKind::Sub);

  Expr r = parse_expr("log(x - (1/2 + i))");
  REQUIRE(r.node().kind == NodeKind::Fun);
  CHECK(r.node().fun == FunKind::Log);
  CHECK(r.node().a->kind == NodeKind::Sub);
  // printer round-trip oracle
  std::string s1 = print_expr(r);
  Expr r2 = parse_expr(s1);
  CHECK(print_expr(r2) == s1);
  CHECK(equal(r, r2));

  SECTION("rational literals fold exactly") {
    Expr h = parse_expr("3.25");
    REQUIRE(h.node().kind == NodeKind::Const);
    CHECK(h.node().value == BigRational(13, 4));
  }
  SECTION("errors carry byte offsets and codes") {
    try {
      parse_expr("x + @");
      FAIL("expected syntax error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::syntax);
      CHECK(std::string(e.what()).find("byte 4") != std::string::npos);
    }
    try {
      parse_expr("foo(x)");
      FAIL("expected unknown identifier");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::unknown_ident);
    }
  }
}

TEST_CASE("evaluate: examples and domain errors") {
  CHECK(abs(ev("x^2", C(3.0)) - C(9.0)) == 0.0);

  // independent high-precision oracle for e
  Complex<Real100> e_hp = evaluate(parse_expr("exp(x)"), Complex<Real100>(Real100(1)));
  double e_d = ev("exp(x)", C(1.0)).re;
  CHECK(std::abs(e_d - to_double(e_hp.re)) <= 10 * std::numeric_limits<double>::epsilon() * e_d);

  CHECK_THROWS_AS(ev("log(x)", C(-1.0)), Error);       // principal cut
  CHECK_THROWS_AS(ev("1/(x-2)", C(2.0)), Error);       // pole hit
  CHECK(abs(ev("exp(i*pi)", C(0.0)) - C(-1.0)) <= 1e-15);

  SECTION("deterministic: same tree, same point, identical bits") {
    Expr f = parse_expr("sin(x^3 - 1/7) * exp(x/3) + pi");
    C z(0.37, -1.22);
    C a = ev(f, z), b = ev(f, z);
    CHECK(a.re == b.re);
    CHECK(a.im == b.im);
  }
}

TEST_CASE("differentiate: symbolic examples and finite-difference oracle") {
  Expr d1 = differentiate(parse_expr("x^2"));
  for (double t : {0.3, -1.7, 2.5})
    CHECK(abs(ev(d1, C(t)) - C(2 * t)) <= 1e-14);

  Expr d2 = differentiate(parse_expr("log(x-2)"));
  for (double t : {3.0, 5.5})
    CHECK(abs(ev(d2, C(t)) - C(1.0 / (t - 2))) <= 1e-15);

  SECTION("d/dx exp(c x) = c exp(c x), finite differences at 5 random points") {
    Expr f = parse_expr("exp(3/2*x)");
    Expr df = differentiate(f);
    std::mt19937 rng(123);
    std::uniform_real_distribution<double> U(-1, 1);
    double h = 1e-5;
    for (int k = 0; k < 5; ++k) {
      C z(U(rng), U(rng));
      C fd = (ev(f, z + C(h)) - ev(f, z - C(h))) / C(2 * h);
      CHECK(abs(ev(df, z) - fd) <= 1e-6);
    }
  }

  SECTION("product rule holds at 20 random regular points") {
    Expr f = parse_expr("sin(x)*exp(x/2)");
    Expr g = parse_expr("x^3 + 2*x - 1/3");
    Expr dfg = differentiate(f * g);
    Expr expect = differentiate(f) * g + f * differentiate(g);
    std::mt19937 rng(321);
    std::uniform_real_distribution<double> U(-2, 2);
    for (int k = 0; k < 20; ++k) {
      C z(U(rng), U(rng));
      C a = ev(dfg, z), b = ev(expect, z);
      CHECK(abs(a - b) <= 1e-10 * std::max(1.0, to_double(abs(a))));
    }
  }
}

TEST_CASE("parser/printer round trip on random trees (depth <= 6)") {
  std::mt19937 rng(20250810);
  for (int it = 0; it < 300; ++it) {
    Expr e = random_tree(rng, std::uniform_int_distribution<int>(0, 6)(rng));
    std::string s = print_expr(e);
    Expr back = parse_expr(s);
    INFO("printed: " << s);
    CHECK(equal(e, back));
    CHECK(print_expr(back) == s);
  }
}

TEST_CASE("substitution composes") {
  Expr f = parse_expr("x^2 + 1");
  Expr g = parse_expr("exp(x)");
  Expr fg = substitute(f, g);
  C z(0.3, 0.4);
  CHECK(abs(ev(fg, z) - (ev(f, ev(g, z)))) <= 1e-14);
}

TEST_CASE("taylor expansion by series arithmetic") {
  SECTION("exp(x) at 0: coefficients 1/k!") {
    auto t = taylor(parse_expr("exp(x)"), C(0.0), 10);
    double fact = 1;
    for (size_t k = 0; k < 10; ++k) {
      if (k > 0) fact *= k;
      CHECK(abs(t.c[k] - C(1.0 / fact)) <= 1e-15);
    }
  }
  SECTION("matches the symbolic derivative at order 1") {
    Expr f = parse_expr("sin(x)/(x-3) + log(x+2)");
    Expr df = differentiate(f);
    for (double x0 : {0.0, 0.5, 1.0}) {
      auto t = taylor(f, C(x0), 3);
      CHECK(abs(t.c[1] - ev(df, C(x0))) <= 1e-13);
    }
  }
  SECTION("high order against the closed form for 1/(x-2)") {
    auto t = taylor(parse_expr("1/(x-2)"), C(0.0), 30);
    // 1/(x-2) = -sum x^k / 2^{k+1}
    for (size_t k = 0; k < 30; ++k)
      CHECK(abs(t.c[k] - C(-1.0 / std::pow(2.0, double(k + 1)))) <= 1e-16 * std::pow(2.0, -double(k)));
  }
  SECTION("expansion at a pole is a domain error") {
    CHECK_THROWS_AS(taylor(parse_expr("1/(x-2)"), C(2.0), 4), Error);
  }
}
