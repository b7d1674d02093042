#pragma once

#include <array>
#include <cstdint>

#include "siegel3/common.hpp"

namespace s3 {

template <class T>
using Mat3 = std::array<std::array<T, 3>, 3>;
using IMat3 = Mat3<long long>;
using RMat3 = Mat3<real>;
using CMat3 = Mat3<cplx>;
using IVec3 = std::array<long long, 3>;

template <class T>
Mat3<T> identity3() {
  Mat3<T> m{};
  for (int i = 0; i < 3; ++i) m[i][i] = T(1);
  return m;
}

template <class T>
Mat3<T> transpose(const Mat3<T>& a) {
  Mat3<T> r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[i][j] = a[j][i];
  return r;
}

template <class T>
Mat3<T> operator*(const Mat3<T>& a, const Mat3<T>& b) {
  Mat3<T> r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      T acc{};
      for (int k = 0; k < 3; ++k) acc += a[i][k] * b[k][j];
      r[i][j] = acc;
    }
  return r;
}

template <class T>
Mat3<T> operator+(const Mat3<T>& a, const Mat3<T>& b) {
  Mat3<T> r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[i][j] = a[i][j] + b[i][j];
  return r;
}

template <class T>
Mat3<T> operator-(const Mat3<T>& a, const Mat3<T>& b) {
  Mat3<T> r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[i][j] = a[i][j] - b[i][j];
  return r;
}

template <class T>
T det3(const Mat3<T>& a) {
  return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
         a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
         a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
}

// Classical adjoint: a * adj(a) = det(a) * I.
template <class T>
Mat3<T> adjugate(const Mat3<T>& a) {
  Mat3<T> r{};
  r[0][0] = a[1][1] * a[2][2] - a[1][2] * a[2][1];
  r[0][1] = a[0][2] * a[2][1] - a[0][1] * a[2][2];
  r[0][2] = a[0][1] * a[1][2] - a[0][2] * a[1][1];
  r[1][0] = a[1][2] * a[2][0] - a[1][0] * a[2][2];
  r[1][1] = a[0][0] * a[2][2] - a[0][2] * a[2][0];
  r[1][2] = a[0][2] * a[1][0] - a[0][0] * a[1][2];
  r[2][0] = a[1][0] * a[2][1] - a[1][1] * a[2][0];
  r[2][1] = a[0][1] * a[2][0] - a[0][0] * a[2][1];
  r[2][2] = a[0][0] * a[1][1] - a[0][1] * a[1][0];
  return r;
}

template <class T, class U>
Mat3<T> cast3(const Mat3<U>& a) {
  Mat3<T> r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[i][j] = static_cast<T>(a[i][j]);
  return r;
}

// Exact integer determinant; throws Overflow if the result leaves int64.
long long det3_exact(const IMat3& a);
IMat3 mul_exact(const IMat3& a, const IMat3& b);
bool is_unimodular(const IMat3& u);
// Inverse of a unimodular matrix (adjugate times det).
IMat3 inverse_unimodular(const IMat3& u);

// Symmetric complex 3x3 matrix. Layout: tau1,tau2,tau3 on the diagonal,
// z1 = (1,2), z2 = (1,3), z3 = (2,3).
struct SymC3 {
  cplx tau1{}, tau2{}, tau3{}, z1{}, z2{}, z3{};

  static SymC3 from_matrix(const CMat3& m);  // symmetrizes off-diagonals
  static SymC3 diag(cplx a, cplx b, cplx c) { return {a, b, c, 0, 0, 0}; }
  CMat3 matrix() const;
  RMat3 real_part() const;
  RMat3 imag_part() const;
  cplx det() const;
  cplx det2() const { return tau1 * tau2 - z1 * z1; }  // leading 2x2 minor
  SymC3 operator+(const SymC3& o) const;
  SymC3 operator*(cplx c) const;
};

// Real symmetric 3x3 matrix, layout y1,y2,y3 diagonal; y4=(1,2), y5=(1,3), y6=(2,3).
struct PosDefForm {
  real y1{}, y2{}, y3{}, y4{}, y5{}, y6{};

  static PosDefForm from_matrix(const RMat3& m);
  static PosDefForm identity() { return {1, 1, 1, 0, 0, 0}; }
  RMat3 matrix() const;
  real det() const;
  real det2() const { return y1 * y2 - y4 * y4; }
  real value(const IVec3& v) const;  // Y[v]
  PosDefForm adjugate() const;
  PosDefForm scaled(real c) const { return {c * y1, c * y2, c * y3, c * y4, c * y5, c * y6}; }
};

// Leading-minor test with relative tolerance (0 means strict).
bool is_positive_definite(const RMat3& y, real rel_tol = 1e-12);
bool is_positive_definite(const PosDefForm& y, real rel_tol = 1e-12);
bool is_siegel_point(const SymC3& z, real rel_tol = 1e-12);

// L lower triangular with L * L^T = Y, returned as (t1..t6) where
// L = [[t1,0,0],[t4,t2,0],[t5,t6,t3]].
std::array<real, 6> cholesky_lower(const PosDefForm& y);

PosDefForm congruence(const PosDefForm& y, const IMat3& u);
SymC3 congruence(const SymC3& z, const IMat3& u);

// 6x6 integer matrix in 3x3 blocks (A B; C D).
struct SymplecticMat {
  std::array<std::array<long long, 6>, 6> m{};

  static SymplecticMat identity();
  static SymplecticMat from_blocks(const IMat3& a, const IMat3& b, const IMat3& c, const IMat3& d);
  static SymplecticMat J();
  IMat3 block(int bi, int bj) const;
  IMat3 A() const { return block(0, 0); }
  IMat3 B() const { return block(0, 1); }
  IMat3 C() const { return block(1, 0); }
  IMat3 D() const { return block(1, 1); }
  SymplecticMat operator*(const SymplecticMat& o) const;
  bool operator==(const SymplecticMat& o) const { return m == o.m; }
  long long max_abs() const;
};

// Exact test of tM J M = J.
bool is_symplectic(const SymplecticMat& m);

struct MobiusResult {
  SymC3 point;
  cplx j;  // det(CZ + D)
};
MobiusResult mobius(const SymplecticMat& m, const SymC3& z);

CMat3 inverse3(const CMat3& a);

}  // namespace s3
