#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "siegel3/special.hpp"

using namespace s3;
using namespace s3::testing;

// Reference values below were produced once with mpmath at 30 digits and frozen.

TEST_CASE("complex gamma") {
  CHECK(rel_err(complex_gamma(0.5), std::sqrt(kPi)) < 1e-14);
  CHECK(rel_err(complex_gamma(2.0), 1.0) < 1e-14);
  CHECK(rel_err(complex_gamma(cplx(1.5, 2)), cplx(0.16591510893899095487, 0.14946347326641948739)) < 1e-12);
  CHECK(rel_err(complex_gamma(cplx(-3.7, 0.2)), cplx(0.1937597216115616782, -0.018836662733468159573)) < 1e-12);
  CHECK(rel_err(complex_gamma(cplx(10.3, -20)), cplx(-0.42340641380781848828, -0.18405524328732157614)) < 1e-12);
  CHECK(rel_err(complex_gamma(cplx(0.1, 45)), cplx(1.0947824051721626712e-31, 7.5929746307463992159e-34)) < 1e-12);
  CHECK_THROWS_AS(complex_gamma(0.0), Pole);
  CHECK_THROWS_AS(complex_gamma(-3.0), Pole);

  std::mt19937_64 rng(31);
  for (int n = 0; n < 500; ++n) {
    cplx z = random_cplx(rng, 20);
    if (std::abs(z) > 45) continue;
    CHECK(rel_err(complex_gamma(z + 1.0), z * complex_gamma(z)) <= 1e-12);
  }
}

TEST_CASE("complex zeta") {
  CHECK(rel_err(complex_zeta(2.0), kPi * kPi / 6.0) < 1e-14);
  CHECK(rel_err(complex_zeta(0.0), -0.5) < 1e-14);
  CHECK(rel_err(complex_zeta(cplx(3, 1)), cplx(1.1072144084314091956, -0.14829086717817534849)) < 1e-10);
  CHECK(rel_err(complex_zeta(cplx(1.2, 40)), cplx(0.86229100031937236266, -0.37482776386289564178)) < 1e-10);
  CHECK(rel_err(complex_zeta(cplx(-2.5, 3)), cplx(0.068763679033646481628, 0.13398028393783442697)) < 1e-10);
  CHECK(rel_err(complex_zeta(cplx(2, -50)), cplx(0.77395093315669076018, -0.12594471582633419672)) < 1e-10);
  CHECK_THROWS_AS(complex_zeta(1.0), Pole);

  std::mt19937_64 rng(32);
  for (int n = 0; n < 300; ++n) {
    cplx s(uniform(rng, 0.05, 0.95), uniform(rng, -20, 20));
    cplx rhs = std::pow(cplx(2), s) * std::pow(cplx(kPi), s - 1.0) * std::sin(kPi * s / 2.0) *
               complex_gamma(1.0 - s) * complex_zeta(1.0 - s);
    CHECK(rel_err(complex_zeta(s), rhs) <= 1e-9);
  }
}

TEST_CASE("xi and phi") {
  CHECK(rel_err(xi2(1.0), kPi / 6.0) < 1e-14);
  CHECK(std::isfinite(std::abs(xi2(0.25))));
  CHECK_THROWS_AS(xi2(0.0), Pole);
  CHECK_THROWS_AS(xi2(0.5), Pole);
  // phi cancels both poles: the product stabilizes as the offset shrinks (to 1/8 at 0, to 0 at 1/2).
  for (cplx s0 : {cplx(0), cplx(0.5)}) {
    cplx a = phi(s0 + 1e-5) * xi2(s0 + 1e-5), b = phi(s0 + 1e-6) * xi2(s0 + 1e-6);
    CHECK(std::isfinite(std::abs(b)));
    CHECK(std::abs(a - b) < 1e-4 * std::max<real>(1, std::abs(b)));
  }
  CHECK(std::abs(phi(1e-7) * xi2(1e-7) - 0.125) < 1e-6);
  CHECK(phi(0.5) == 0.0);
  CHECK(phi(0.0) == 0.0);
  CHECK(phi(2.0) == 4.5);
  std::mt19937_64 rng(33);
  for (int n = 0; n < 100; ++n) {
    cplx s = random_cplx(rng, 5);
    CHECK(std::abs(phi(s) - phi(1.0 - s)) <= 1e-12 * std::max<real>(1, std::abs(phi(s))));
  }
}

TEST_CASE("matrix gamma function closed form") {
  CHECK(rel_err(gamma3({0, 0, 2}), -kPi * kPi / 2.0) < 1e-13);
  CHECK(rel_err(gamma3({1, 1, 2}), cplx(0, 4.5 * kPi * kPi)) < 1e-13);
  CHECK_THROWS_AS(gamma3({0, 0, 1}), Pole);
  std::mt19937_64 rng(34);
  for (int n = 0; n < 100; ++n) {
    cplx s = random_cplx(rng, 2), w = random_cplx(rng, 2), u = random_cplx(rng, 2);
    cplx a = gamma3({-w, -s, s + w + u}), b = gamma3({w - 1.0, 0.5 - s - w, s + w + u});
    CHECK(rel_err(a, b) <= 1e-12);
  }
}

TEST_CASE("Bessel K") {
  for (real x : {0.1, 0.7, 2.0, 15.0}) {
    cplx k = besselK(0.5, x);
    CHECK(rel_err(k, std::sqrt(kPi / (2 * x)) * std::exp(-x)) < 1e-10);
    cplx nu(1.3, 0.8);
    CHECK(rel_err(besselK(nu, x), besselK(-nu, x)) < 1e-12);
  }
  CHECK(rel_err(besselK(0, 1), 0.42102443824070833334) < 1e-10);
  CHECK(rel_err(besselK(cplx(2.3, 1.1), 0.7), cplx(-1.5341016820254778658, 4.2419173476564901675)) < 1e-10);
  CHECK(rel_err(besselK(7.5, 12), 0.000019821049684594501791) < 1e-10);
  CHECK_THROWS_AS(besselK(1, 0), DomainError);
}

TEST_CASE("adaptive quadrature") {
  auto r = integrate_gk([](real x) { return cplx(std::exp(-x * x)); }, -8, 8);
  CHECK(rel_err(r.value, std::sqrt(kPi)) < 1e-13);
  QuadConfig tight;
  tight.max_panels = 3;
  tight.rel_tol = 1e-15;
  CHECK_THROWS_AS(integrate_gk([](real x) { return cplx(std::sqrt(x)); }, 0, 1, tight), QuadratureFailure);
  // Gaussian integral with linear term against direct quadrature.
  cplx beta(1.3, -0.4), gamma(0.7, 2.1);
  auto g = integrate_gk([&](real t) { return std::exp(-beta * t * t + gamma * t); }, -12, 12);
  CHECK(rel_err(g.value, gaussian_integral(beta, gamma)) < 1e-12);
}

TEST_CASE("moment integrals match the one-dimensional closed form") {
  // int_0^inf t^a e(q t^2) dt = (1/2) (-2 pi i q)^{-(a+1)/2} Gamma((a+1)/2)
  std::mt19937_64 rng(35);
  for (int n = 0; n < 20; ++n) {
    cplx a(uniform(rng, -0.8, 6), uniform(rng, -2, 2));
    cplx q(uniform(rng, -1, 1), uniform(rng, 0.5, 2));
    cplx num = gaussian_moment(a, q, [&](real t) { return std::exp(2.0 * kPi * kI * q * t * t); });
    cplx exact = 0.5 * std::exp(-(a + 1.0) / 2.0 * std::log(-2.0 * kPi * kI * q)) * complex_gamma((a + 1.0) / 2.0);
    CHECK(rel_err(num, exact) < 1e-11);
  }
}

TEST_CASE("matrix integral by the factorized quadrature") {
  SymC3 iI = SymC3::diag(kI, kI, kI);
  LemmaIntReport r = lemma_int({1, 1, 2}, iI);
  CHECK(r.gap <= 1e-10);
  cplx expect = std::pow(2 * kPi, -9.0) * gamma3({1, 1, 2});
  CHECK(rel_err(r.lhs, expect) <= 1e-10);

  std::mt19937_64 rng(36);
  for (int n = 0; n < 10; ++n) {
    SymC3 z = random_siegel(rng, 1.0, 0.5, 0.5);
    CHECK(lemma_int_gap({1.5, 1.0, 2.0}, z) <= 1e-8);
  }
  CHECK_THROWS_AS(lemma_int({0, 0, 0.5}, iI), PreconditionViolation);
}
