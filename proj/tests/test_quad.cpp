#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "resurgia/hadamard.hpp"
#include "resurgia/quad.hpp"

using namespace resurgia;
using namespace resurgia::quad;
using C = Complex<double>;

TEST_CASE("tanh-sinh basics, including endpoint singularities") {
  auto r1 = tanh_sinh([](const double& x) { return C(std::log(x)); }, 0.0, 1.0, 1e-12);
  CHECK(std::abs(r1.value.re + 1.0) <= 1e-12);

  auto r2 = tanh_sinh([](const double& x) { return C(1.0 / std::sqrt(x)); }, 0.0, 1.0, 1e-12);
  CHECK(std::abs(r2.value.re - 2.0) <= 1e-11);

  auto r3 = tanh_sinh([](const double& x) { return C(1.0 / (1.0 + x * x)); }, 0.0, 1.0, 1e-13);
  CHECK(std::abs(r3.value.re - pi_v<double>() / 4) <= 1e-13);
}

TEST_CASE("laplace: exact exponential integral and Gamma(3/2) oracle") {
  auto g_const = [](const double&) { return C(1.0 / 6.0); };
  auto r = laplace(g_const, 10.0, 1e-12);
  CHECK(std::abs(r.value.re - 1.0 / 60.0) <= 1e-12);
  CHECK(r.value.im == 0.0);

  auto g_sqrt = [](const double& p) { return C(std::sqrt(p)); };
  auto r2 = laplace(g_sqrt, 1.0, 1e-11);
  double gamma_3_2 = std::sqrt(pi_v<double>()) / 2;  // Gamma(3/2)
  CHECK(std::abs(r2.value.re - gamma_3_2) <= 1e-10);

  SECTION("growth rate >= N is a divergence error") {
    CHECK_THROWS_AS(laplace(g_const, 2.0, 1e-10, 1.0, 3.0), Error);
  }
}

TEST_CASE("laplace properties: linearity and scaling law") {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> U(-2, 2);
  double al = U(rng), be = U(rng);
  auto g1 = [](const double& p) { return C(std::cos(p)); };
  auto g2 = [](const double& p) { return C(1.0 / (1.0 + p)); };
  double tol = 1e-11, N = 3.0;

  auto lin_lhs = laplace([&](const double& p) { return C(al) * g1(p) + C(be) * g2(p); }, N, tol);
  auto lin_rhs = C(al) * laplace(g1, N, tol).value + C(be) * laplace(g2, N, tol).value;
  CHECK(abs(lin_lhs.value - lin_rhs) <= 2 * tol);

  for (double c : {0.5, 2.0}) {
    auto lhs = laplace([&](const double& p) { return g1(c * p); }, N, tol);
    auto rhs = laplace(g1, N / c, tol);
    CHECK(abs(lhs.value - C(1.0 / c) * rhs.value) <= 2 * tol);
  }
}

TEST_CASE("circle integrals: residues") {
  double tol = 1e-12;
  auto inv = [](const C& s) { return C(1.0) / s; };
  auto two_pi_i = C(0.0, 2 * pi_v<double>());
  CHECK(abs(circle_integral(inv, C(), 0.7, tol) - two_pi_i) <= 1e-11);

  auto shifted = [](const C& s) { return C(1.0) / (s - C(5.0)); };
  CHECK(abs(circle_integral(shifted, C(), 1.0, tol)) <= 1e-12);

  auto essential = [](const C& s) { return exp(s) / (s * s); };
  CHECK(abs(circle_integral(essential, C(), 0.3, tol) - two_pi_i) <= 1e-11);

  SECTION("any polynomial integrates to zero") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> U(-1, 1);
    C a0(U(rng), U(rng)), a1(U(rng), U(rng)), a2(U(rng), U(rng)), a3(U(rng), U(rng));
    auto poly = [&](const C& s) { return a0 + a1 * s + a2 * s * s + a3 * s * s * s; };
    CHECK(abs(circle_integral(poly, C(0.2, -0.1), 1.3, 1e-13)) <= 1e-12);
  }
}

TEST_CASE("hadamard_integral: geometric pair, identity element, r-independence") {
  using series::AnalyticHandle;
  AnalyticHandle<double> geo{[](const C& s) { return C(1.0) / (C(1.0) - s); }, 1.0, {C(1.0)}};

  SECTION("geometric (*) geometric = geometric") {
    C v = series::hadamard_integral(geo, geo, C(0.1), 0.5, 1e-12);
    CHECK(abs(v - C(1.0 / 0.9)) <= 1e-11);
  }
  SECTION("all-ones series (1/(1-w)) is the identity") {
    AnalyticHandle<double> A{[](const C& s) { return exp(C(0.7) * s) + s * s; }, 0.0, {}};
    C p(0.3, 0.1);
    C v = series::hadamard_integral(A, geo, p, 0.8, 1e-12);
    CHECK(abs(v - A.eval(p)) <= 1e-11);
  }
  SECTION("result independent of admissible radius") {
    C p(0.12, 0.0);
    C v1 = series::hadamard_integral(geo, geo, p, 0.4, 1e-13);
    C v2 = series::hadamard_integral(geo, geo, p, 0.75, 1e-13);
    CHECK(abs(v1 - v2) <= 1e-10);
  }
  SECTION("contour too close to a singularity is refused") {
    CHECK_THROWS_AS(series::hadamard_integral(geo, geo, C(0.1), 1.0 - 1e-9, 1e-12), Error);
  }
}
