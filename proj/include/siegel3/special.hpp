#pragma once

#include <functional>

#include "siegel3/power.hpp"

namespace s3 {

// ---- quadrature -----------------------------------------------------------

struct QuadConfig {
  real rel_tol = 1e-13;
  real abs_tol = 0;
  int max_panels = 4000;
};

struct QuadResult {
  cplx value;
  real error;
  int panels;
};

// Adaptive 7/15-point Gauss-Kronrod on [a, b]. Throws QuadratureFailure when
// the panel budget runs out before the error target is met.
QuadResult integrate_gk(const std::function<cplx(real)>& f, real a, real b, const QuadConfig& cfg = {});

// ---- scalar special functions ---------------------------------------------

cplx complex_gamma(cplx z);
cplx log_gamma(cplx z);  // valid for Re z >= 1/2 (any branch of the log)
cplx complex_zeta(cplx s);
cplx xi2(cplx s);  // pi^{-s} Gamma(s) zeta(2s)
cplx phi(cplx s);  // s(1-s)(s-1/2)(1/2-s)

// K_nu(x) for x > 0 from the cosh integral representation.
cplx besselK(cplx nu, real x);

// ---- matrix gamma function -------------------------------------------------

// pi^{3/2} e^{(s+2w+3u) pi i/2} Gamma(s+w+u) Gamma(w+u-1/2) Gamma(u-1)
cplx gamma3(const TripleS& e);

// integral over t in (0, inf) of t^a exp(2 pi i q t^2) * amp(t), where amp is
// bounded and q is in the upper half plane (controls the envelope).
cplx gaussian_moment(cplx a, cplx q, const std::function<cplx(real)>& amp, const QuadConfig& cfg = {});

// Closed form of the one-dimensional Gaussian integral with linear term:
// integral over R of exp(-beta t^2 + gamma t) = sqrt(pi/beta) exp(gamma^2/(4 beta)).
cplx gaussian_integral(cplx beta, cplx gamma);

struct LemmaIntReport {
  cplx lhs;  // quadrature path
  cplx rhs;  // (2 pi i)^{-(s+2w+3u)} Gamma_3 p_{s,w,u}(-Z^{-1})
  cplx L1, L2, L3;
  real gap;
};

LemmaIntReport lemma_int(const TripleS& e, const SymC3& z, const QuadConfig& cfg = {});
real lemma_int_gap(const TripleS& e, const SymC3& z, const QuadConfig& cfg = {});

}  // namespace s3
