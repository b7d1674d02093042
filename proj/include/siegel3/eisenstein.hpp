#pragma once

#include <vector>

#include "siegel3/lattice.hpp"
#include "siegel3/power.hpp"

namespace s3 {

// Coset gamma P of GL3(Z)/P (P minimal parabolic) as the flag
// (line Zv, plane with primitive normal n); both vectors sign-canonical.
struct Flag {
  IVec3 v;
  IVec3 n;
  bool operator==(const Flag&) const = default;
};

struct TruncationSpec {
  real q_bound = 50;  // cap on Y[v]
  real g_bound = 50;  // cap on adj(Y)[n]
};

struct SeriesResult {
  cplx value;
  std::size_t terms = 0;
  real tail = 0;               // upper bound on |value - limit|; +inf when not available
  bool outside_region = false;  // evaluated where the series does not converge absolutely
};

// Sign-canonical primitive vectors with q[v] <= bound, sorted by (q[v], v).
std::vector<IVec3> primitive_vectors(const PosDefForm& q, real bound);

std::vector<Flag> enumerate_flags(const PosDefForm& y, const TruncationSpec& t);

// (det Y)^{-u} sum over flags of Y[v]^{-s} adj(Y)[n]^{-w}.
SeriesResult selberg_E(const PosDefForm& y, const TripleS& e, const TruncationSpec& t, unsigned threads = 1);

// Independent evaluation from the definition: walks matrices gamma = [c1 c2 c3] in
// GL3(Z), keeps one per coset gamma P and sums e^{(s+2w+3u) pi i/2} p_{-s,-w,-u}(i Y[gamma])
// with the branch functions. Same truncation (Y[c1] <= q, det Y[gamma]_2 <= g).
SeriesResult selberg_E_cosets(const PosDefForm& y, const TripleS& e, const TruncationSpec& t);

// Epstein zeta (1/2) sum over nonzero v with Y[v] <= bound of Y[v]^{-s}. dim = 2 uses
// the leading 2x2 block of y.
SeriesResult epstein(const PosDefForm& y, int dim, cplx s, real bound);

// Rigorous bound on (1/2) sum_{Y[v] > bound} Y[v]^{-sigma} given the count of
// nonzero vectors with Y[v] <= bound. +inf when sigma <= dim/2.
real epstein_tail(const PosDefForm& y, int dim, real sigma, real bound, std::size_t count_inside);

// 2x2 form W_tau = (1/t) [[1, -sigma], [-sigma, sigma^2 + t^2]] embedded as a leading block.
PosDefForm w_tau(cplx tau);
// tau_Y = y/y1 + i sqrt(det Y)/y1 for the leading 2x2 block.
cplx tau_of(const PosDefForm& y);

// E_s(tau) = Z(W_tau, s) / zeta(2s).
SeriesResult real_analytic_E(cplx tau, cplx s, real bound);

// sum over (a, c) != 0 with |a + c tau|^2 <= bound of |a + c tau|^{-2s}.
SeriesResult zeta_Z2(cplx s, cplx tau, real bound);

struct ZetaStarReport {
  cplx bessel;    // K-Bessel Fourier expansion
  cplx direct;    // row-by-row direct summation minus the explicit terms, halved
  real residual;  // |direct - bessel|
  std::size_t bessel_terms = 0;
};

cplx zeta_Z2_star(cplx s, cplx tau);
ZetaStarReport zeta_Z2_star_report(cplx s, cplx tau);

// The explicit part 2 zeta(2s) + 2 sqrt(pi) Gamma(s-1/2) zeta(2s-1) / Gamma(s) t^{1-2s}.
cplx zeta_Z2_explicit(cplx s, cplx tau);

// (det Y)^{2r/3} sum over sign-canonical primitive n with adj(Y)[n] <= bound of adj(Y)[n]^{-r}.
SeriesResult mu_parabolic(const PosDefForm& y, real r, real bound);

}  // namespace s3
