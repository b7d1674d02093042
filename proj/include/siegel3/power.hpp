#pragma once

#include "siegel3/matrix.hpp"

namespace s3 {

// Spectral point (s, w, u).
struct TripleS {
  cplx s{}, w{}, u{};
  TripleS operator-() const { return {-s, -w, -u}; }
  cplx weight() const { return s + real(2) * w + real(3) * u; }  // s + 2w + 3u
};

struct BranchValue {
  cplx h1, h2, h3;
};

// Principal log that refuses arguments within rel_tol of the cut (-inf, 0].
cplx guarded_log(cplx z, real rel_tol = 1e-14);

// h_j on the Siegel space from the closed principal-log formulas.
BranchValue branch_h(const SymC3& z);
// h_j(-Z^{-1}) from the explicit inverse formulas in terms of Z's entries.
BranchValue branch_h_inverse(const SymC3& z);

// exp(s h1 + w h2 + u h3) and its logarithm.
cplx power_log(const TripleS& e, const BranchValue& h);
cplx power_p(const TripleS& e, const SymC3& z);

// Anti-diagonal permutation matrix W and Z[W] = W Z W (entry reversal).
IMat3 antidiagonal_W();
SymC3 reverse_entries(const SymC3& z);

// Relative gap between the two sides of the inversion identity
// p_{s1,s2,s3}(-Z^{-1}) = e^{(s1+2s2+3s3) pi i} p_{s2,s1,-s1-s2-s3}(Z[W]).
real claim1_gap(const TripleS& e, const SymC3& z);

// Negative inverse -Z^{-1}.
SymC3 neg_inverse(const SymC3& z);

}  // namespace s3
