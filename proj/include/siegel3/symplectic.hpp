#pragma once

#include <vector>

#include "siegel3/eisenstein.hpp"
#include "siegel3/lipschitz.hpp"

namespace s3 {

// Dense integer matrix, row-major. Used for the n x 2n blocks [C D].
using IMatN = std::vector<std::vector<long long>>;

// Nonzero Smith invariants d1 | d2 | ... (all positive).
std::vector<long long> smith_divisors(IMatN a);
// Row Hermite normal form: positive pivots, pivot columns leftmost possible,
// entries above a pivot reduced into [0, pivot). Zero rows are dropped.
IMatN hermite_normal_form(IMatN a);

// Dimension-generic versions on the block [C D] (n rows, 2n columns).
bool is_coprime_symmetric_block(const IMatN& cd);
std::vector<IMatN> enumerate_pair_blocks(int n, int max_abs);

struct CoprimePair {
  IMat3 C{}, D{};
  bool canonical = false;
  bool operator==(const CoprimePair& o) const { return C == o.C && D == o.D; }
};

IMatN pair_block(const IMat3& c, const IMat3& d);
bool is_coprime_symmetric(const IMat3& c, const IMat3& d);
// Unique representative of the left GL3(Z) orbit {(UC, UD)}. Throws NotCoprimePair.
CoprimePair canonical_pair(const IMat3& c, const IMat3& d);
// Canonical pairs with every entry in [-max_abs, max_abs], in enumeration order.
std::vector<CoprimePair> enumerate_pairs(int max_abs);

// Integer (A0, B0) making (A0 B0; C D) symplectic. Throws CompletionFailure.
SymplecticMat complete_to_symplectic(const CoprimePair& p);

// Unimodular matrices whose columns all have Euclidean norm <= max_abs, sorted.
std::vector<IMat3> gl3_ball(int max_abs);

struct PoincareResult {
  cplx value;
  std::size_t terms = 0;
  std::size_t pairs_used = 0;
  std::size_t gl3_ball_size = 0;
};

// (1/2) sum over U in the ball and over the pairs of
// e(tr(T[U] M0<Z>)) det(C Z + D)^{-k}, T[U] = U^T T U.
PoincareResult poincare_trunc(int k, const HalfIntegralForm& t, const SymC3& z, const std::vector<CoprimePair>& pairs,
                              const std::vector<IMat3>& ball, unsigned threads = 1);
PoincareResult poincare_trunc(int k, const HalfIntegralForm& t, const SymC3& z, int max_abs, unsigned threads = 1);

// (2 / pi^{3/2}) (-2 pi i)^{s+2w+3u} / (Gamma(s+w+u-1) Gamma(w+u-1/2) Gamma(u)).
cplx kernel_prefactor(const TripleS& e);

struct KernelResult {
  cplx value;
  std::size_t classes_used = 0;
  std::size_t pairs_used = 0;
  std::size_t gl3_ball_size = 0;
  bool outside_region = false;
};

// prefactor * sum over classes of (1/eps_T) E(T | w, s, -s-w-u+2) P_{k,T}(Z).
KernelResult kernel_trunc(int k, const TripleS& e, const SymC3& z, rational det_bound, const TruncationSpec& flag_trunc,
                          int max_abs, unsigned threads = 1);

// Both sides of the Lipschitz identity slashed by one coset representative M0:
// lhs = j^{-k} sum_S p_{-s,-w,-u}(M0<Z> + S), rhs = j^{-k} (Fourier side at M0<Z>).
struct CosetLipschitz {
  cplx lhs, rhs;
  real relative_gap = 0;
  SymC3 image;
  cplx j;
};
CosetLipschitz coset_lipschitz(int k, const TripleS& e, const CoprimePair& p, const SymC3& z, int max_abs,
                               long long trace_bound, unsigned threads = 1);

}  // namespace s3
