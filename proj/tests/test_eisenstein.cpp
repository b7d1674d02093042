#include <algorithm>
#include <set>

#include "doctest.h"
#include "helpers.hpp"
#include "siegel3/eisenstein.hpp"
#include "siegel3/special.hpp"

using namespace s3;
using namespace s3::testing;

namespace {

IVec3 canon(IVec3 v) { return is_sign_canonical(v) ? v : IVec3{-v[0], -v[1], -v[2]}; }

IVec3 mat_vec(const IMat3& m, const IVec3& v) {
  IVec3 r{};
  for (int i = 0; i < 3; ++i) r[i] = m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2];
  return r;
}

}  // namespace

TEST_CASE("flag enumeration") {
  auto flags = enumerate_flags(PosDefForm::identity(), {1, 1});
  CHECK(flags.size() == 6);
  for (const auto& f : flags) CHECK(dot(f.v, f.n) == 0);

  std::mt19937_64 rng(51);
  for (int k = 0; k < 5; ++k) {
    PosDefForm y = random_posdef(rng, 0.7);
    IMat3 u = random_unimodular(rng, 2);
    PosDefForm yu = congruence(y, u);
    TruncationSpec t{12, 12};
    auto a = enumerate_flags(y, t), b = enumerate_flags(yu, t);
    CHECK(a.size() == b.size());
    // v -> U^{-1} v, n -> U^T n
    IMat3 ui = inverse_unimodular(u), ut = transpose(u);
    std::set<std::pair<IVec3, IVec3>> bs;
    for (const auto& f : b) bs.insert({f.v, f.n});
    for (const auto& f : a) CHECK(bs.count({canon(mat_vec(ui, f.v)), canon(mat_vec(ut, f.n))}) == 1);
  }
}

TEST_CASE("Selberg Eisenstein series: flags against cosets") {
  std::mt19937_64 rng(52);
  TripleS e{2, 2, 0};
  for (const PosDefForm& y : {PosDefForm::identity(), random_posdef(rng, 0.8)}) {
    TruncationSpec t{20, 20};
    SeriesResult f = selberg_E(y, e, t), c = selberg_E_cosets(y, e, t);
    CHECK(f.terms == c.terms);
    CHECK(rel_err(f.value, c.value) <= 1e-12);
    CHECK(std::isfinite(f.tail));
  }
  // Complex exponents go through the branch functions on the coset side.
  PosDefForm y = random_posdef(rng, 0.8);
  TripleS z{cplx(2.2, 0.7), cplx(1.8, -1.1), cplx(0.3, 0.4)};
  CHECK(rel_err(selberg_E(y, z, {15, 15}).value, selberg_E_cosets(y, z, {15, 15}).value) <= 1e-12);
}

TEST_CASE("Selberg Eisenstein series: properties") {
  std::mt19937_64 rng(53);
  PosDefForm y = random_posdef(rng, 0.6);
  TruncationSpec t{25, 25};
  TripleS e{cplx(2.5, 1), cplx(2, -0.5), cplx(0.7, 0.2)};
  SeriesResult base = selberg_E(y, e, t);

  // Term-wise (det Y)^q E(Y|s,w,u) = E(Y|s,w,u-q), no phase.
  for (cplx q : {cplx(1), cplx(0.3, -2)}) {
    cplx lhs = base.value * std::exp(q * std::log(y.det()));
    CHECK(rel_err(lhs, selberg_E(y, {e.s, e.w, e.u - q}, t).value) <= 1e-12);
  }

  // GL3(Z)-invariance at matched truncation.
  for (int k = 0; k < 5; ++k) {
    IMat3 u = random_unimodular(rng, 2);
    SeriesResult r = selberg_E(congruence(y, u), e, t);
    CHECK(r.terms == base.terms);
    CHECK(rel_err(r.value, base.value) <= 1e-11);
  }

  // Thread count does not change a single bit.
  CHECK(selberg_E(y, e, t, 4).value == base.value);

  // Enlarging the bounds moves the value by less than the recorded tail.
  SeriesResult big = selberg_E(y, {2, 2, 0}, {80, 80}), small = selberg_E(y, {2, 2, 0}, {25, 25});
  CHECK(std::abs(big.value - small.value) <= small.tail);
  CHECK(big.tail < small.tail);
  CHECK(selberg_E(y, {0.9, 2, 0}, t).outside_region);
}

TEST_CASE("Epstein zeta") {
  SeriesResult z = epstein(PosDefForm::identity(), 2, 2.0, 250000);
  real exact = 2 * (kPi * kPi / 6) * kCatalan;
  CHECK(std::abs(z.value - exact) <= z.tail);
  CHECK(z.tail <= 1e-4);

  for (real s : {2.0, 3.0}) {
    real b = s == 2 ? kCatalan : kPi * kPi * kPi / 32;
    real zeta_s = complex_zeta(s).real();
    real ex = 2 * zeta_s * b;
    // Coprime-pair definition of E_s(i) with the leading tail term.
    CHECK(std::abs(complex_zeta(2 * s).real() * coprime_E(kI, s, 4e6) - ex) <= 1e-8);
    SeriesResult e = real_analytic_E(kI, s, 1e4);
    CHECK(std::abs(complex_zeta(2 * s).real() * e.value.real() - epstein(PosDefForm::identity(), 2, s, 1e4).value.real()) <= 1e-14);
  }
  // At a non-square point the two routes agree within the tail of the lattice sum.
  cplx tau(0.5, 1.0);
  SeriesResult e = real_analytic_E(tau, 3.0, 1e5);
  CHECK(std::abs(e.value - coprime_E(tau, 3.0, 1e6)) <= e.tail + 1e-10);

  // Exact bijection v -> U^{-1} v at matched truncation.
  std::mt19937_64 rng(54);
  for (int k = 0; k < 10; ++k) {
    PosDefForm y = random_posdef(rng, 0.5);
    IMat3 u = random_unimodular(rng, 2);
    SeriesResult a = epstein(y, 3, cplx(2, 0.5), 40), b = epstein(congruence(y, u), 3, cplx(2, 0.5), 40);
    CHECK(a.terms == b.terms);
    CHECK(rel_err(a.value, b.value) <= 1e-12);
    SeriesResult big = epstein(y, 3, 2.5, 400);
    SeriesResult small = epstein(y, 3, 2.5, 40);
    CHECK(std::abs(big.value - small.value) <= small.tail);
  }
}

TEST_CASE("real analytic Eisenstein series") {
  cplx tau(0.2, 1.3);
  SeriesResult a = real_analytic_E(tau, 2.0, 2e4);
  // S and T generators.
  SeriesResult b = real_analytic_E(tau + 1.0, 2.0, 2e4);
  SeriesResult c = real_analytic_E(-1.0 / tau, 2.0, 2e4);
  CHECK(rel_err(a.value, b.value) <= 1e-12);
  CHECK(rel_err(a.value, c.value) <= 1e-12);
  CHECK(a.terms == c.terms);
  // Identity coset dominates high in the cusp.
  for (real t : {5.0, 20.0}) {
    SeriesResult r = real_analytic_E({0.3, t}, 2.0, 1e4);
    CHECK(std::abs(r.value * std::pow(t, -2.0) - 1.0) < 3 / (t * t));
  }
  CHECK(rel_err(real_analytic_E(kI, 2.0, 1e4).value,
                epstein(PosDefForm::identity(), 2, 2.0, 1e4).value / complex_zeta(4.0)) <= 1e-14);
}

TEST_CASE("zeta_Z2 and the Epstein bridge") {
  std::mt19937_64 rng(55);
  for (int k = 0; k < 20; ++k) {
    PosDefForm y = random_posdef(rng, 0.5);
    cplx s(uniform(rng, 1.5, 3), uniform(rng, -2, 2));
    cplx tau = tau_of(y);
    real d = std::sqrt(y.det2());
    SeriesResult lhs = epstein(y, 2, s, 300 * y.y1);
    SeriesResult rhs = zeta_Z2(s, tau, 300);
    CHECK(lhs.terms == rhs.terms);
    CHECK(rel_err(2.0 * lhs.value, std::exp(s * std::log(tau.imag() / d)) * rhs.value) <= 1e-12);
  }
  cplx tau(0.37, 0.9);
  CHECK(rel_err(zeta_Z2(2.5, tau, 500).value, zeta_Z2(2.5, tau + 1.0, 500).value) <= 1e-13);
  SeriesResult z = zeta_Z2(2.0, kI, 1e5);
  CHECK(std::abs(z.value - 4 * (kPi * kPi / 6) * kCatalan) <= z.tail);
}

TEST_CASE("zeta_Z2 star") {
  for (auto [s, tau] : {std::pair<cplx, cplx>{2.3, {0.3, 1.7}}, {3.0, kI}, {cplx(2.1, 1.5), {-0.4, 0.8}}}) {
    ZetaStarReport r = zeta_Z2_star_report(s, tau);
    CHECK(r.residual <= 1e-8 * std::abs(r.bessel));
  }
  // Decay in t: the ratio follows the first Fourier mode.
  cplx a = zeta_Z2_star(2.3, {0, 5}), b = zeta_Z2_star(2.3, {0, 10});
  real predicted = std::pow(2.0, 0.5 - 2.3) * std::abs(besselK(1.8, 20 * kPi) / besselK(1.8, 10 * kPi));
  CHECK(std::abs(std::abs(b / a) / predicted - 1) < 1e-6);
  CHECK(std::abs(b / a) < std::exp(-2 * kPi * 5) * 10);
  // Cosine parity.
  CHECK(rel_err(zeta_Z2_star(2.7, {0.31, 1.2}), zeta_Z2_star(2.7, {-0.31, 1.2})) <= 1e-13);
  CHECK_THROWS_AS(zeta_Z2_star(2, {0, 0.05}), DomainError);
}

TEST_CASE("maximal parabolic sum") {
  std::mt19937_64 rng(56);
  for (int k = 0; k < 100; ++k) {
    PosDefForm y = random_posdef(rng, 0.5);
    IVec3 n{uniform_int(rng, -4, 4), uniform_int(rng, -4, 4), uniform_int(rng, -4, 4)};
    if (!is_primitive(n)) continue;
    IMat3 u = row_completion(n);
    IVec3 b1{u[0][1], u[1][1], u[2][1]}, b2{u[0][2], u[1][2], u[2][2]};
    CHECK(dot(n, b1) == 0);
    CHECK(dot(n, b2) == 0);
    CHECK(canon(cross(b1, b2)) == canon(n));
    real g11 = y.value(b1), g22 = y.value(b2);
    real g12 = (y.value({b1[0] + b2[0], b1[1] + b2[1], b1[2] + b2[2]}) - g11 - g22) / 2;
    real gram = g11 * g22 - g12 * g12;
    CHECK(std::abs(gram - y.adjugate().value(n)) <= 1e-10 * gram);
  }
  PosDefForm y = random_posdef(rng, 0.5);
  SeriesResult m = mu_parabolic(y, 2.0, 30);
  IMat3 u = random_unimodular(rng, 2);
  SeriesResult mu = mu_parabolic(congruence(y, u), 2.0, 30);
  CHECK(m.terms == mu.terms);
  CHECK(std::abs(m.value - mu.value) <= 1e-12 * m.value.real());
  // adj(cY) = c^2 adj(Y)
  SeriesResult ms = mu_parabolic(y.scaled(3.0), 2.0, 30 * 9.0);
  CHECK(std::abs(m.value - ms.value) <= 1e-12 * m.value.real());
  CHECK(std::abs(mu_parabolic(y, 2.0, 300).value - m.value) <= m.tail);
}
