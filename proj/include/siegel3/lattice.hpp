#pragma once

#include <boost/rational.hpp>
#include <compare>
#include <functional>
#include <string>
#include <vector>

#include "siegel3/matrix.hpp"

namespace s3 {

using rational = boost::rational<long long>;

// Half-integral form T: integer diagonal t1..t3, doubled off-diagonals b_ij = 2 t_ij.
struct HalfIntegralForm {
  long long t1 = 0, t2 = 0, t3 = 0, b12 = 0, b13 = 0, b23 = 0;

  static HalfIntegralForm from_doubled(const IMat3& g);  // from 2T
  static HalfIntegralForm identity() { return {1, 1, 1, 0, 0, 0}; }
  static HalfIntegralForm diag(long long a, long long b, long long c) { return {a, b, c, 0, 0, 0}; }
  static HalfIntegralForm parse(const std::string& csv);  // "t1,t2,t3,b12,b13,b23"

  IMat3 doubled() const;  // 2T, an even-diagonal integer matrix
  long long value(const IVec3& v) const;  // T[v], always an integer
  long long bilinear2(const IVec3& v, const IVec3& w) const;  // v^T (2T) w
  long long det_doubled() const;  // det(2T) = 8 det T
  rational det() const;
  long long trace() const { return t1 + t2 + t3; }
  bool is_positive_definite() const;  // exact
  PosDefForm to_real() const;
  std::string str() const;

  auto operator<=>(const HalfIntegralForm&) const = default;
};

HalfIntegralForm congruence(const HalfIntegralForm& t, const IMat3& u);

struct ReducedForm {
  HalfIntegralForm form;
  IMat3 U;  // congruence(original, U) == form
};

// Integer symmetric matrices (a b c; b d e; c e f), entries in [-m, m],
// lexicographic in (a,b,c,d,e,f).
std::size_t dual_lattice_size(int max_abs);
IMat3 dual_lattice_element(int max_abs, std::size_t index);
std::vector<IMat3> enumerate_dual_lattice(int max_abs);

std::vector<HalfIntegralForm> enumerate_J(long long trace_bound);

// Integer vector helpers.
IVec3 cross(const IVec3& a, const IVec3& b);
long long dot(const IVec3& a, const IVec3& b);
long long content(const IVec3& v);  // gcd of the entries (0 for the zero vector)
bool is_primitive(const IVec3& v);
bool is_sign_canonical(const IVec3& v);  // first nonzero entry positive
// U in GL3(Z) with n . U e1 = 1 and n . U e2 = n . U e3 = 0, for primitive n.
// The last two columns are then a basis of the plane orthogonal to n.
IMat3 row_completion(const IVec3& n);

// Integer vectors with q[v] <= radius (floating test, slightly inflated so exact
// boundary points are never lost; callers re-check exactly when needed).
// Order: v3 ascending, then v2, then v1. The zero vector is skipped.
void for_each_short_vector(const RMat3& q, real radius, const std::function<void(const IVec3&)>& fn);

bool satisfies_reduction_inequalities(const HalfIntegralForm& t);
ReducedForm minkowski_reduce(const HalfIntegralForm& t);
bool is_canonical(const HalfIntegralForm& t);
long long automorphism_count(const HalfIntegralForm& t);

struct ClassInfo {
  ReducedForm rep;
  rational det;
  long long eps;
};
std::vector<ClassInfo> reduced_classes(rational det_bound);
std::string classes_csv(const std::vector<ClassInfo>& classes);

}  // namespace s3
