#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "resurgia/bernoulli.hpp"
#include "resurgia/series.hpp"
#include "resurgia/zeta.hpp"

using namespace resurgia;
using C = Complex<double>;
using CSeries = TruncatedSeries<C>;

TEST_CASE("Bernoulli numbers from the exact recurrence") {
  auto b = bernoulli_numbers(8);
  CHECK(b[0] == BigRational(1));
  CHECK(b[1] == BigRational(-1, 2));
  CHECK(b[2] == BigRational(1, 6));
  CHECK(b[3] == BigRational(0));
  CHECK(b[4] == BigRational(-1, 30));
  CHECK(b[6] == BigRational(1, 42));
  // odd ones vanish beyond B_1
  for (size_t n = 3; n < 8; n += 2) CHECK(b[n] == BigRational(0));
  // reduced with positive denominator
  for (auto& q : b) CHECK(denominator(q) > 0);
}

TEST_CASE("Bernoulli generating series matches p/(e^p-1) at p=0.1") {
  double p = 0.1;
  double acc = 0, fact = 1;
  auto b = bernoulli_numbers(30);
  for (unsigned n = 0; n < 30; ++n) {
    if (n > 0) fact *= n;
    acc += to_real<double>(b[n]) / fact * std::pow(p, n);
  }
  double target = p / (std::exp(p) - 1.0);
  CHECK(std::abs(acc - target) <= 1e-12);
}

TEST_CASE("Borel transform definition") {
  SECTION("sum n! / N^{n+1} maps to the geometric series") {
    CSeries s("1/N", 8);
    double fact = 1;
    for (size_t n = 0; n + 1 < 8; ++n) {
      if (n > 0) fact *= n;
      s.c[n + 1] = C(fact);
    }
    auto g = borel_transform(s);
    REQUIRE(g.var == "p");
    for (size_t n = 0; n < g.order(); ++n) {
      CHECK(g.c[n].re == Catch::Approx(1.0).margin(1e-15));
      CHECK(g.c[n].im == 0.0);
    }
  }
  SECTION("1/N maps to the constant series 1") {
    CSeries s("1/N", 2);
    s.c[1] = C(1.0);
    auto g = borel_transform(s);
    REQUIRE(g.order() == 1);
    CHECK(g.c[0].re == 1.0);
  }
  SECTION("nonzero constant term is rejected") {
    CSeries s("1/N", 3);
    s.c[0] = C(2.0);
    CHECK_THROWS_AS(borel_transform(s), Error);
  }
  SECTION("slot map and linearity on random series") {
    std::mt19937 rng(20240811);
    std::uniform_real_distribution<double> U(-2, 2);
    CSeries a("1/N", 12), b("1/N", 12);
    for (size_t k = 1; k < 12; ++k) {
      a.c[k] = C(U(rng), U(rng));
      b.c[k] = C(U(rng), U(rng));
    }
    double al = U(rng), be = U(rng);
    auto lhs = borel_transform(C(al) * a + C(be) * b);
    auto rhs = C(al) * borel_transform(a) + C(be) * borel_transform(b);
    double fact = 1;
    for (size_t n = 0; n + 1 < 12; ++n) {
      if (n > 0) fact *= n;
      CHECK(abs(lhs.c[n] - rhs.c[n]) <= 1e-14);
      CHECK(abs(borel_transform(a).c[n] - C(1.0 / fact) * a.c[n + 1]) <= 1e-14);
    }
  }
}

TEST_CASE("Hadamard product: identity, inverse-slots example, algebra") {
  auto ones = CSeries::constant("p", 32, C(1.0));
  for (size_t k = 1; k < 32; ++k) ones.c[k] = C(1.0);

  std::mt19937 rng(7);
  std::uniform_real_distribution<double> U(-3, 3);
  CSeries a("p", 32), b("p", 32), c("p", 32);
  for (size_t k = 0; k < 32; ++k) {
    a.c[k] = C(U(rng), U(rng));
    b.c[k] = C(U(rng), U(rng));
    c.c[k] = C(U(rng), U(rng));
  }

  SECTION("all-ones series is the identity") {
    auto r = hadamard_product(a, ones);
    for (size_t k = 0; k < 32; ++k) CHECK(abs(r.c[k] - a.c[k]) == 0.0);
  }
  SECTION("(1,2,3,...) x (1,1/2,1/3,...) = all-ones") {
    CSeries n_up("p", 16), n_dn("p", 16);
    for (size_t k = 0; k < 16; ++k) {
      n_up.c[k] = C(double(k + 1));
      n_dn.c[k] = C(1.0 / double(k + 1));
    }
    auto r = hadamard_product(n_up, n_dn);
    for (size_t k = 0; k < 16; ++k) CHECK(r.c[k].re == Catch::Approx(1.0).margin(1e-15));
  }
  SECTION("commutative and associative") {
    auto ab = hadamard_product(a, b), ba = hadamard_product(b, a);
    for (size_t k = 0; k < 32; ++k) CHECK(abs(ab.c[k] - ba.c[k]) == 0.0);
    auto l = hadamard_product(hadamard_product(a, b), c);
    auto r = hadamard_product(a, hadamard_product(b, c));
    for (size_t k = 0; k < 32; ++k) CHECK(abs(l.c[k] - r.c[k]) <= 1e-12);
  }
  SECTION("tag mismatch is an error") {
    CSeries wrong("1/N", 4);
    CHECK_THROWS_AS(hadamard_product(a, wrong), Error);
  }
}

TEST_CASE("Series arithmetic: exp, log1p, inverse round-trips") {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> U(-0.5, 0.5);
  CSeries a("u", 14);
  for (size_t k = 1; k < 14; ++k) a.c[k] = C(U(rng), U(rng));

  auto e = exp_series(a);
  auto back = log1p_series(e - CSeries::constant("u", 14, C(1.0)));
  for (size_t k = 1; k < 14; ++k) CHECK(abs(back.c[k] - a.c[k]) <= 1e-12);

  auto one = hadamard_product(CSeries::constant("u", 14, C(1.0)), CSeries::constant("u", 14, C(1.0)));
  (void)one;
  auto u = CSeries::constant("u", 14, C(1.0)) + a;
  auto inv = inverse(u);
  auto prod = u * inv;
  CHECK(abs(prod.c[0] - C(1.0)) <= 1e-14);
  for (size_t k = 1; k < 14; ++k) CHECK(abs(prod.c[k]) <= 1e-12);
}

TEST_CASE("Exact rational series: exp and inverse") {
  TruncatedSeries<BigRational> a("1/x", 6);
  a.c[1] = BigRational(3);  // exp(3/x)
  auto e = exp_series(a);
  CHECK(e.c[0] == BigRational(1));
  CHECK(e.c[1] == BigRational(3));
  CHECK(e.c[2] == BigRational(9, 2));
  CHECK(e.c[3] == BigRational(9, 2));
  CHECK(e.c[4] == BigRational(27, 8));
}

TEST_CASE("Hurwitz zeta via Euler-MacLaurin") {
  double pi2 = pi_v<double>() * pi_v<double>();
  CHECK(std::abs(hurwitz_zeta_int<double>(2, 1.0, 1e-16) - pi2 / 6) <= 1e-14);
  CHECK(std::abs(hurwitz_zeta_int<double>(4, 1.0, 1e-16) - pi2 * pi2 / 90) <= 1e-14);
  // tail consistency: zeta(3, a) = zeta(3, a+1) + a^{-3}
  double za = hurwitz_zeta_int<double>(3, 5.0, 1e-16);
  double zb = hurwitz_zeta_int<double>(3, 6.0, 1e-16);
  CHECK(std::abs(za - zb - std::pow(5.0, -3)) <= 1e-14);

  // high tier
  Real100 z2 = hurwitz_zeta_int<Real100>(2, Real100(1), eps_v<Real100>());
  Real100 target = pi_v<Real100>() * pi_v<Real100>() / 6;
  CHECK(abs(z2 - target) < Real100("1e-95"));
}
