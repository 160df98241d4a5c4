#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "resurgia/kernel.hpp"

using namespace resurgia;
using namespace resurgia::borel;
using C = Complex<double>;

TEST_CASE("G for f = x^2 is identically 1/6 on both routes") {
  Expr f = parse_expr("x^2");
  for (double p : {0.05, 0.3, 1.0, 4.0, 11.0}) {
    auto v = G_series(f, C(p), 1e-12);
    CHECK(abs(v.value - C(1.0 / 6)) <= 1e-12);
  }
  auto vc = G_series(f, C(0.4, 0.7), 1e-12);
  CHECK(abs(vc.value - C(1.0 / 6)) <= 1e-12);

  auto vi = G_integral(f, C(0.3), 1e-11);
  CHECK(abs(vi.value - C(1.0 / 6)) <= 1e-10);
}

TEST_CASE("G for constants vanishes") {
  Expr f = parse_expr("7/3");
  CHECK(abs(G_series(f, C(0.8), 1e-13).value) <= 1e-13);
  CHECK(abs(G_integral(f, C(0.5), 1e-12).value) <= 1e-11);
}

TEST_CASE("dual-route agreement") {
  SECTION("f = e^x at p = 1") {
    Expr f = parse_expr("exp(x)");
    auto a = G_series(f, C(1.0), 1e-10);
    auto b = G_integral(f, C(1.0), 1e-10);
    CHECK(abs(a.value - b.value) <= 1e-8);
  }
  SECTION("f = 1/(x-2) at p = 1") {
    Expr f = parse_expr("1/(x-2)");
    auto a = G_series(f, C(1.0), 1e-10);
    auto b = G_integral(f, C(1.0), 1e-10);
    CHECK(abs(a.value - b.value) <= 1e-8);
  }
  SECTION("20 random (f, p) pairs in the common domain") {
    std::vector<Expr> family = {
        parse_expr("x^2"),          parse_expr("x^3 + x/2"),
        parse_expr("exp(x)"),       parse_expr("exp(x/2)"),
        parse_expr("x*exp(x/3)"),   parse_expr("1/(x-2)"),
        parse_expr("sin(x)/(x-3)"), parse_expr("cos(x/2)")};
    std::mt19937 rng(20240613);
    std::uniform_real_distribution<double> U(0.05, 1.0), A(0, 2 * pi_v<double>());
    for (int k = 0; k < 20; ++k) {
      const Expr& f = family[k % family.size()];
      // keep |p| inside the integral route's domain for r0 <= 0.45
      C p = polar(U(rng) * 1.8, A(rng));
      auto a = G_series(f, p, 1e-10);
      auto b = G_integral(f, p, 1e-10);
      INFO("pair " << k << " f = " << print_expr(f) << " p = (" << p.re << "," << p.im << ")");
      CHECK(abs(a.value - b.value) <= 1e-8);
    }
  }
}

TEST_CASE("G_series refuses points near the kernel singularity set") {
  Expr f = parse_expr("1/(x-2)");
  // nearest point of N on the ray i R+: 2 pi i (omega - 1) = 2 pi i
  C near_sing(0.0, 2 * pi_v<double>() + 1e-8);
  CHECK_THROWS_AS(G_series(f, near_sing, 1e-10), Error);
}

TEST_CASE("H kernel") {
  SECTION("value at 0 is B_2/2! = 1/12") {
    CHECK(abs(H_kernel(C(0.0)) - C(1.0 / 12)) <= 1e-15);
    CHECK(abs(H_kernel(C(1e-4)) - C(1.0 / 12)) <= 1e-4);
  }
  SECTION("Schwarz reflection: H(conj p) = conj H(p)") {
    C p(0.3, 0.41);
    CHECK(abs(H_kernel(conj(p)) - conj(H_kernel(p))) <= 1e-15);
  }
  SECTION("p = 1: direct formula vs 40-term Bernoulli Taylor sum") {
    // independent oracle: exact Bernoulli rationals
    double acc = 0;
    for (unsigned n = 1; n <= 40; ++n)
      acc += to_real<double>(bernoulli(2 * n)) / to_real<double>(factorial_big(2 * n));
    // at p=1 each power p^{2n-2} = 1
    CHECK(std::abs(H_kernel(C(1.0)).re - acc) <= 1e-12);
    CHECK(std::abs(H_kernel(C(1.0)).im) == 0.0);
  }
  SECTION("poles are refused") {
    CHECK_THROWS_AS(H_kernel(C(0.0, 2 * pi_v<double>())), Error);
  }
}

TEST_CASE("predicted singularity set") {
  SECTION("f = 1/(x-2): points 4 pi i n and 2 pi i n, nearest |p| = 2 pi") {
    auto ns = G_singularity_set(parse_expr("1/(x-2)"), 30.0);
    REQUIRE_FALSE(ns.points.empty());
    CHECK(std::abs(to_double(abs(ns.points[0])) - 2 * pi_v<double>()) <= 1e-9);
    for (auto& pt : ns.points) {
      CHECK(std::abs(pt.re) <= 1e-9);  // all on the imaginary axis
      double y = std::abs(pt.im) / (2 * pi_v<double>());
      double frac = std::min(y - std::floor(y), std::ceil(y) - y);
      bool on_2pi_lattice = frac <= 1e-9;
      double y2 = std::abs(pt.im) / (4 * pi_v<double>());
      double frac2 = std::min(y2 - std::floor(y2), std::ceil(y2) - y2);
      CHECK((on_2pi_lattice || frac2 <= 1e-9));
    }
  }
  SECTION("entire f has an empty set") {
    CHECK(G_singularity_set(parse_expr("x^2"), 50.0).points.empty());
    CHECK(G_singularity_set(parse_expr("exp(x)"), 50.0).points.empty());
  }
  SECTION("f = (x-omega)^{-2}, omega = 3+i: every point lies on the generator lattice") {
    Expr f = parse_expr("1/(x-(3+i))^2");
    auto ns = G_singularity_set(f, 60.0);
    REQUIRE_FALSE(ns.points.empty());
    C w(3.0, 1.0), w1(2.0, 1.0);
    for (auto& pt : ns.points) {
      bool ok = false;
      for (long n = 1; n <= 12 && !ok; ++n) {
        for (C base : {w, w1}) {
          C lat = C(0, 2 * pi_v<double>() * n) * base;
          if (to_double(abs(pt - lat)) <= 1e-8 || to_double(abs(pt + lat)) <= 1e-8) ok = true;
        }
      }
      CHECK(ok);
    }
  }
}

TEST_CASE("Taylor consistency: G_series Maclaurin slots vs Borel transform of the remainder series") {
  Expr f = parse_expr("exp(x/2)");
  auto exact = gf_taylor(f, 8);
  // finite-difference style: Cauchy coefficients of G_series on a small circle
  GfEvaluator<double> ev(f);
  int M = 64;
  double r = 0.5;
  for (size_t k = 0; k < 6; ++k) {
    C acc;
    for (int j = 0; j < M; ++j) {
      double th = 2 * pi_v<double>() * j / M;
      C p = polar(r, th);
      C val = ev(p, 1e-12).value;
      acc += val * polar(1.0, -th * double(k));
    }
    acc = acc / C(double(M) * std::pow(r, double(k)));
    CHECK(abs(acc - exact.c[k]) <= 1e-6);
  }
}

TEST_CASE("exponential bound along the real ray") {
  Expr f = parse_expr("exp(x)");
  GfEvaluator<double> ev(f);
  double a = 1.0, two_pi = 2 * pi_v<double>();
  double base_ratio = to_double(abs(ev(C(2.0), 1e-10).value)) * std::exp(-a * 2.0 / two_pi);
  for (double p : {6.0, 12.0, 20.0}) {
    double ratio = to_double(abs(ev(C(p), 1e-10).value)) * std::exp(-a * p / two_pi);
    CHECK(ratio <= 3 * base_ratio + 1.0);
  }
}

TEST_CASE("radius prediction from Taylor coefficients (root test)") {
  auto t = gf_taylor(parse_expr("1/(x-2)"), 60);
  // fit log|c_k| ~ -k log R on the nonzero (even) slots
  std::vector<std::pair<double, double>> pts;
  for (size_t k = 20; k < 60; ++k) {
    double m = to_double(abs(t.c[k]));
    if (m > 0) pts.push_back({double(k), std::log(m)});
  }
  REQUIRE(pts.size() >= 10);
  double n = pts.size(), sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto [x, y] : pts) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  double radius = std::exp(-slope);
  CHECK(std::abs(radius - 2 * pi_v<double>()) <= 0.05 * 2 * pi_v<double>());
}
