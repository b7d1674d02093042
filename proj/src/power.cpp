#include "siegel3/power.hpp"

#include <cmath>

namespace s3 {

cplx guarded_log(cplx z, real rel_tol) {
  real mag = std::abs(z);
  if (mag == 0) throw BranchCut("log argument is zero");
  if (z.real() <= 0 && std::abs(z.imag()) <= rel_tol * mag)
    throw BranchCut("log argument on the cut (-inf, 0]");
  return std::log(z);
}

BranchValue branch_h(const SymC3& z) {
  const cplx two_pi_i = real(2) * kPi * kI;
  cplx m23 = z.z3 * z.z3 - z.tau2 * z.tau3;
  BranchValue h;
  h.h1 = guarded_log(z.tau1);
  h.h2 = guarded_log(-z.det2()) + kPi * kI;
  h.h3 = guarded_log(z.det() / m23) + guarded_log(m23) + two_pi_i;
  return h;
}

BranchValue branch_h_inverse(const SymC3& z) {
  cplx d = z.det();
  cplx m23 = z.z3 * z.z3 - z.tau2 * z.tau3;
  BranchValue h;
  h.h1 = guarded_log(m23 / d);
  h.h2 = guarded_log(-z.tau3 / d) + kPi * kI;
  h.h3 = -guarded_log(d / m23) - guarded_log(m23) + kPi * kI;
  return h;
}

cplx power_log(const TripleS& e, const BranchValue& h) { return e.s * h.h1 + e.w * h.h2 + e.u * h.h3; }

cplx power_p(const TripleS& e, const SymC3& z) { return std::exp(power_log(e, branch_h(z))); }

IMat3 antidiagonal_W() { return {{{0, 0, 1}, {0, 1, 0}, {1, 0, 0}}}; }

SymC3 reverse_entries(const SymC3& z) {
  // W Z W swaps indices 1 <-> 3: tau1 <-> tau3, z1 <-> z3, z2 fixed.
  return {z.tau3, z.tau2, z.tau1, z.z3, z.z2, z.z1};
}

SymC3 neg_inverse(const SymC3& z) {
  CMat3 inv = inverse3(z.matrix());
  return SymC3::from_matrix(inv) * cplx(-1);
}

real claim1_gap(const TripleS& e, const SymC3& z) {
  cplx lhs = power_log(e, branch_h(neg_inverse(z)));
  TripleS swapped{e.w, e.s, -e.s - e.w - e.u};
  cplx rhs = e.weight() * kPi * kI + power_log(swapped, branch_h(reverse_entries(z)));
  // |p_L - p_R| / |p_L| = |1 - exp(log p_R - log p_L)|
  return std::abs(real(1) - std::exp(rhs - lhs));
}

}  // namespace s3
