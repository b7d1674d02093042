#include <cmath>

#include "doctest.h"
#include "helpers.hpp"

using namespace s3;
using namespace s3::testing;

namespace {
const SymC3 kIdentityPoint = SymC3::diag(kI, kI, kI);
}

TEST_CASE("branch values at purely imaginary points") {
  BranchValue h = branch_h(kIdentityPoint);
  CHECK(std::abs(h.h1 - kI * kPi / 2.0) < 1e-15);
  CHECK(std::abs(h.h2 - kI * kPi) < 1e-15);
  CHECK(std::abs(h.h3 - kI * 3.0 * kPi / 2.0) < 1e-15);

  h = branch_h(SymC3::diag(kI, kI, 4.0 * kI));
  CHECK(std::abs(h.h3 - (kI * 1.5 * kPi + std::log(4.0))) < 1e-14);

  std::mt19937_64 rng(21);
  for (int n = 0; n < 200; ++n) {
    PosDefForm y = random_posdef(rng);
    BranchValue b = branch_h(siegel_from(RMat3{}, y));
    CHECK(std::abs(b.h1 - (kI * kPi / 2.0 + std::log(y.y1))) < 1e-13);
    CHECK(std::abs(b.h2 - (kI * kPi + std::log(y.det2()))) < 1e-13);
    CHECK(std::abs(b.h3 - (kI * 1.5 * kPi + std::log(y.det()))) < 1e-13);
  }
}

TEST_CASE("branch cut is reported, never perturbed") {
  CHECK_THROWS_AS(guarded_log(cplx(-1, 0)), BranchCut);
  CHECK_THROWS_AS(guarded_log(cplx(-1, 1e-16)), BranchCut);
  CHECK_NOTHROW(guarded_log(cplx(-1, 1e-10)));
  CHECK_THROWS_AS(branch_h(SymC3::diag(-1.0, kI, kI)), BranchCut);
}

TEST_CASE("exp consistency and the imaginary-part bound") {
  std::mt19937_64 rng(22);
  for (int n = 0; n < 1000; ++n) {
    SymC3 z = random_siegel(rng, 0.1, 3.0, 2.0);
    BranchValue h = branch_h(z);
    CHECK(rel_err(std::exp(h.h1), z.tau1) <= 1e-12);
    CHECK(rel_err(std::exp(h.h2), z.det2()) <= 1e-12);
    CHECK(rel_err(std::exp(h.h3), z.det()) <= 1e-12);
    CHECK(std::abs(h.h3.imag()) <= 4.5 * kPi);
  }
}

TEST_CASE("inverse formulas agree with the direct path") {
  BranchValue a = branch_h_inverse(kIdentityPoint), b = branch_h(kIdentityPoint);
  CHECK(std::abs(a.h3 - b.h3) < 1e-15);
  std::mt19937_64 rng(23);
  for (int n = 0; n < 1000; ++n) {
    SymC3 z = random_siegel(rng, 0.3, 2.0);
    BranchValue inv = branch_h_inverse(z);
    BranchValue direct = branch_h(neg_inverse(z));
    CHECK(std::abs(inv.h1 - direct.h1) <= 1e-12 * std::max<real>(1, std::abs(direct.h1)));
    CHECK(std::abs(inv.h2 - direct.h2) <= 1e-12 * std::max<real>(1, std::abs(direct.h2)));
    CHECK(std::abs(inv.h3 - direct.h3) <= 1e-12 * std::max<real>(1, std::abs(direct.h3)));
    CHECK(std::abs(branch_h(z).h3 + inv.h3 - 3.0 * kPi * kI) <= 1e-12);
  }
}

TEST_CASE("power function") {
  std::mt19937_64 rng(24);
  for (int n = 0; n < 50; ++n) {
    TripleS e{random_cplx(rng, 3), random_cplx(rng, 3), random_cplx(rng, 3)};
    CHECK(rel_err(power_p(e, kIdentityPoint), std::exp(e.weight() * kPi * kI / 2.0)) < 1e-13);
  }
  CHECK(rel_err(power_p({1, 1, 1}, kIdentityPoint * 2.0), cplx(-64)) < 1e-14);

  for (int n = 0; n < 200; ++n) {
    TripleS e{random_cplx(rng, 3), random_cplx(rng, 3), random_cplx(rng, 3)};
    PosDefForm y = random_posdef(rng);
    cplx expect = std::exp(e.weight() * kPi * kI / 2.0 + e.s * std::log(y.y1) + e.w * std::log(y.det2()) +
                           e.u * std::log(y.det()));
    CHECK(rel_err(power_p(e, siegel_from(RMat3{}, y)), expect) < 1e-12);
    real c = uniform(rng, 0.2, 5.0);
    cplx scaled = power_p(e, siegel_from(RMat3{}, y.scaled(c)));
    CHECK(rel_err(scaled, std::exp(e.weight() * std::log(c)) * power_p(e, siegel_from(RMat3{}, y))) < 1e-12);
  }
}

TEST_CASE("inversion identity for the power function") {
  std::mt19937_64 rng(25);
  TripleS e{random_cplx(rng, 3), random_cplx(rng, 3), random_cplx(rng, 3)};
  CHECK(claim1_gap(e, kIdentityPoint) < 1e-14);
  CHECK(claim1_gap({1, 0, 0}, SymC3::diag(kI, 2.0 * kI, 3.0 * kI)) <= 1e-12);
  real worst = 0;
  for (int n = 0; n < 1000; ++n) {
    TripleS f{random_cplx(rng, 3), random_cplx(rng, 3), random_cplx(rng, 3)};
    worst = std::max(worst, claim1_gap(f, random_siegel(rng, 0.5, 2.0)));
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("h3 is invariant under entry reversal") {
  std::mt19937_64 rng(26);
  for (int n = 0; n < 500; ++n) {
    SymC3 z = random_siegel(rng, 0.2, 3.0);
    CHECK(std::abs(branch_h(reverse_entries(z)).h3 - branch_h(z).h3) < 1e-12);
    SymC3 w = congruence(z, antidiagonal_W());
    CHECK(std::abs(w.tau1 - z.tau3) < 1e-15);
    CHECK(std::abs(w.z1 - z.z3) < 1e-15);
  }
}

TEST_CASE("branches vary continuously along straight paths") {
  std::mt19937_64 rng(27);
  for (int p = 0; p < 100; ++p) {
    SymC3 a = random_siegel(rng, 0.05, 4.0, 3.0), b = random_siegel(rng, 0.05, 4.0, 3.0);
    BranchValue prev = branch_h(a);
    real jump = 0;
    for (int k = 1; k <= 1000; ++k) {
      real t = k / 1000.0;
      BranchValue h = branch_h(a * cplx(1 - t) + b * cplx(t));
      jump = std::max({jump, std::abs(h.h1 - prev.h1), std::abs(h.h2 - prev.h2), std::abs(h.h3 - prev.h3)});
      prev = h;
    }
    CHECK(jump < 0.1);
  }
}
