#include "siegel3/matrix.hpp"

#include <algorithm>
#include <cmath>

namespace s3 {

namespace {

long long checked(__int128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw Overflow("integer matrix entry overflow");
  return static_cast<long long>(v);
}

}  // namespace

long long det3_exact(const IMat3& a) {
  auto m = [&](int i, int j) { return static_cast<__int128>(a[i][j]); };
  __int128 d = m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
               m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
               m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
  return checked(d);
}

IMat3 mul_exact(const IMat3& a, const IMat3& b) {
  IMat3 r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      __int128 acc = 0;
      for (int k = 0; k < 3; ++k) acc += static_cast<__int128>(a[i][k]) * b[k][j];
      r[i][j] = checked(acc);
    }
  return r;
}

bool is_unimodular(const IMat3& u) {
  long long d = det3_exact(u);
  return d == 1 || d == -1;
}

IMat3 inverse_unimodular(const IMat3& u) {
  long long d = det3_exact(u);
  if (d != 1 && d != -1) throw DomainError("matrix is not unimodular");
  IMat3 r = adjugate(u);
  for (auto& row : r)
    for (auto& x : row) x *= d;
  return r;
}

SymC3 SymC3::from_matrix(const CMat3& m) {
  return {m[0][0], m[1][1], m[2][2], (m[0][1] + m[1][0]) / real(2), (m[0][2] + m[2][0]) / real(2),
          (m[1][2] + m[2][1]) / real(2)};
}

CMat3 SymC3::matrix() const {
  return {{{tau1, z1, z2}, {z1, tau2, z3}, {z2, z3, tau3}}};
}

RMat3 SymC3::real_part() const {
  CMat3 m = matrix();
  RMat3 r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[i][j] = m[i][j].real();
  return r;
}

RMat3 SymC3::imag_part() const {
  CMat3 m = matrix();
  RMat3 r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[i][j] = m[i][j].imag();
  return r;
}

cplx SymC3::det() const { return det3(matrix()); }

SymC3 SymC3::operator+(const SymC3& o) const {
  return {tau1 + o.tau1, tau2 + o.tau2, tau3 + o.tau3, z1 + o.z1, z2 + o.z2, z3 + o.z3};
}

SymC3 SymC3::operator*(cplx c) const {
  return {c * tau1, c * tau2, c * tau3, c * z1, c * z2, c * z3};
}

PosDefForm PosDefForm::from_matrix(const RMat3& m) {
  return {m[0][0], m[1][1], m[2][2], (m[0][1] + m[1][0]) / 2, (m[0][2] + m[2][0]) / 2,
          (m[1][2] + m[2][1]) / 2};
}

RMat3 PosDefForm::matrix() const {
  return {{{y1, y4, y5}, {y4, y2, y6}, {y5, y6, y3}}};
}

real PosDefForm::det() const { return det3(matrix()); }

real PosDefForm::value(const IVec3& v) const {
  real a = static_cast<real>(v[0]), b = static_cast<real>(v[1]), c = static_cast<real>(v[2]);
  return y1 * a * a + y2 * b * b + y3 * c * c + 2 * (y4 * a * b + y5 * a * c + y6 * b * c);
}

PosDefForm PosDefForm::adjugate() const { return from_matrix(s3::adjugate(matrix())); }

bool is_positive_definite(const RMat3& y, real rel_tol) {
  real scale = 0;
  for (const auto& row : y)
    for (real x : row) scale = std::max(scale, std::abs(x));
  if (scale == 0) return false;
  real m1 = y[0][0];
  real m2 = y[0][0] * y[1][1] - y[0][1] * y[1][0];
  real m3 = det3(y);
  return m1 > rel_tol * scale && m2 > rel_tol * scale * scale && m3 > rel_tol * scale * scale * scale;
}

bool is_positive_definite(const PosDefForm& y, real rel_tol) {
  return is_positive_definite(y.matrix(), rel_tol);
}

bool is_siegel_point(const SymC3& z, real rel_tol) { return is_positive_definite(z.imag_part(), rel_tol); }

std::array<real, 6> cholesky_lower(const PosDefForm& y) {
  // Column 1: t1 = sqrt(y1), t4 = y4/t1, t5 = y5/t1.
  if (!(y.y1 > 0)) throw NotPositiveDefinite("cholesky: pivot 1 not positive");
  real t1 = std::sqrt(y.y1);
  real t4 = y.y4 / t1;
  real t5 = y.y5 / t1;
  real p2 = y.y2 - t4 * t4;
  if (!(p2 > 0)) throw NotPositiveDefinite("cholesky: pivot 2 not positive");
  real t2 = std::sqrt(p2);
  real t6 = (y.y6 - t4 * t5) / t2;
  real p3 = y.y3 - t5 * t5 - t6 * t6;
  if (!(p3 > 0)) throw NotPositiveDefinite("cholesky: pivot 3 not positive");
  real t3 = std::sqrt(p3);
  return {t1, t2, t3, t4, t5, t6};
}

PosDefForm congruence(const PosDefForm& y, const IMat3& u) {
  RMat3 ur = cast3<real>(u);
  return PosDefForm::from_matrix(transpose(ur) * y.matrix() * ur);
}

SymC3 congruence(const SymC3& z, const IMat3& u) {
  CMat3 uc = cast3<cplx>(u);
  return SymC3::from_matrix(transpose(uc) * z.matrix() * uc);
}

SymplecticMat SymplecticMat::identity() {
  SymplecticMat r;
  for (int i = 0; i < 6; ++i) r.m[i][i] = 1;
  return r;
}

SymplecticMat SymplecticMat::from_blocks(const IMat3& a, const IMat3& b, const IMat3& c, const IMat3& d) {
  SymplecticMat r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      r.m[i][j] = a[i][j];
      r.m[i][j + 3] = b[i][j];
      r.m[i + 3][j] = c[i][j];
      r.m[i + 3][j + 3] = d[i][j];
    }
  return r;
}

SymplecticMat SymplecticMat::J() {
  IMat3 z{}, id = identity3<long long>(), mid{};
  for (int i = 0; i < 3; ++i) mid[i][i] = -1;
  return from_blocks(z, id, mid, z);
}

IMat3 SymplecticMat::block(int bi, int bj) const {
  IMat3 r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[i][j] = m[3 * bi + i][3 * bj + j];
  return r;
}

SymplecticMat SymplecticMat::operator*(const SymplecticMat& o) const {
  SymplecticMat r;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      __int128 acc = 0;
      for (int k = 0; k < 6; ++k) acc += static_cast<__int128>(m[i][k]) * o.m[k][j];
      r.m[i][j] = checked(acc);
    }
  return r;
}

long long SymplecticMat::max_abs() const {
  long long r = 0;
  for (const auto& row : m)
    for (long long x : row) r = std::max(r, x < 0 ? -x : x);
  return r;
}

bool is_symplectic(const SymplecticMat& m) {
  SymplecticMat t;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) t.m[i][j] = m.m[j][i];
  return t * SymplecticMat::J() * m == SymplecticMat::J();
}

CMat3 inverse3(const CMat3& a) {
  cplx d = det3(a);
  real scale = 1;
  for (const auto& row : a) {
    real n = 0;
    for (const auto& x : row) n += std::norm(x);
    scale *= std::sqrt(n);
  }
  if (std::abs(d) <= real(1e-14) * scale || std::abs(d) == 0)
    throw SingularDenominator("matrix numerically singular");
  CMat3 r = adjugate(a);
  for (auto& row : r)
    for (auto& x : row) x /= d;
  return r;
}

MobiusResult mobius(const SymplecticMat& m, const SymC3& z) {
  CMat3 zm = z.matrix();
  CMat3 a = cast3<cplx>(m.A()), b = cast3<cplx>(m.B()), c = cast3<cplx>(m.C()), d = cast3<cplx>(m.D());
  CMat3 den = c * zm + d;
  CMat3 num = a * zm + b;
  CMat3 inv = inverse3(den);
  return {SymC3::from_matrix(num * inv), det3(den)};
}

}  // namespace s3
