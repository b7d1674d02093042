#pragma once

#include "siegel3/lattice.hpp"
#include "siegel3/power.hpp"

namespace s3 {

struct LipschitzReport {
  cplx lhs;
  cplx rhs;
  real relative_gap = 0;  // |lhs - rhs| / max(|lhs|, |rhs|, 1e-300)
  cplx rhs_literal;       // stated prefactor without the lattice covolume
  real literal_gap = 0;
  std::size_t lhs_terms = 0;
  std::size_t rhs_terms = 0;
  int max_abs = 0;
  long long trace_bound = 0;
  // Extrapolated size of the omitted lhs terms, from the decay of the two
  // outermost max-norm shells (heuristic, not a bound).
  real lhs_tail_estimate = 0;
};

real relative_gap(cplx a, cplx b);

// p_{-s,-w,-u}(Z); integer exponents take the branch-free product
// tau1^{-s} det(Z_2)^{-w} det(Z)^{-u}, everything else goes through power_p.
cplx lipschitz_term(const TripleS& e, const SymC3& z);

struct LhsResult {
  cplx value;
  std::size_t terms = 0;
  real tail_estimate = 0;
};
LhsResult lipschitz_lhs(const TripleS& e, const SymC3& z, int max_abs, unsigned threads = 1);

cplx lipschitz_prefactor(const TripleS& e);

// Poisson summation over the half-integral lattice carries its covolume
// (1/2)^3 in the entry coordinates y1..y6; the stated prefactor omits it.
inline constexpr real kHalfIntegralCovolume = 0.125;

struct RhsResult {
  cplx value;          // with the covolume factor
  cplx value_literal;  // with the bare stated prefactor (= value / covolume)
  std::size_t terms = 0;
};
RhsResult lipschitz_rhs(const TripleS& e, const SymC3& z, long long trace_bound);

LipschitzReport lipschitz_report(const TripleS& e, const SymC3& z, int max_abs, long long trace_bound,
                                 unsigned threads = 1);

struct ClassicalLipschitzReport {
  cplx lhs;  // includes the midpoint integral tail correction
  cplx rhs;
  real relative_gap = 0;
  bool has_closed_form = false;  // s == 2
  cplx closed_form;              // pi^2 / sin^2(pi tau)
  real rhs_closed_gap = 0;
};
ClassicalLipschitzReport classical_lipschitz(cplx tau, cplx s, long long n_bound);

}  // namespace s3
