#pragma once

#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "siegel3/common.hpp"
#include "siegel3/lattice.hpp"
#include "siegel3/power.hpp"
#include "siegel3/symplectic.hpp"

namespace s3::testing {

// Catalan's constant beta(2); beta(3) = pi^3 / 32.
inline constexpr real kCatalan = 0.91596559417721901505;

inline real uniform(std::mt19937_64& rng, real a, real b) {
  return std::uniform_real_distribution<real>(a, b)(rng);
}

inline long long uniform_int(std::mt19937_64& rng, long long a, long long b) {
  return std::uniform_int_distribution<long long>(a, b)(rng);
}

// Y = floor*I + A A^T * spread with A uniform in [-1,1]^{3x3}.
inline PosDefForm random_posdef(std::mt19937_64& rng, real floor = 0.5, real spread = 1.0) {
  RMat3 a{};
  for (auto& row : a)
    for (auto& x : row) x = uniform(rng, -1, 1);
  RMat3 y = a * transpose(a);
  for (auto& row : y)
    for (auto& x : row) x *= spread;
  for (int i = 0; i < 3; ++i) y[i][i] += floor;
  return PosDefForm::from_matrix(y);
}

inline SymC3 siegel_from(const RMat3& x, const PosDefForm& y) {
  RMat3 ym = y.matrix();
  CMat3 m{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m[i][j] = cplx(x[i][j], ym[i][j]);
  return SymC3::from_matrix(m);
}

inline SymC3 random_siegel(std::mt19937_64& rng, real floor = 0.5, real re_range = 1.0, real spread = 1.0) {
  RMat3 x{};
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) x[i][j] = x[j][i] = uniform(rng, -re_range, re_range);
  return siegel_from(x, random_posdef(rng, floor, spread));
}

inline cplx random_cplx(std::mt19937_64& rng, real r) { return {uniform(rng, -r, r), uniform(rng, -r, r)}; }

inline IMat3 random_unimodular(std::mt19937_64& rng, long long max_abs) {
  for (;;) {
    IMat3 u{};
    for (auto& row : u)
      for (auto& x : row) x = uniform_int(rng, -max_abs, max_abs);
    long long d = det3_exact(u);
    if (d == 1 || d == -1) return u;
  }
}

// Bottom row (C, D) of a random word in translations, the inversion, partial
// inversions and GL3 blocks, with every entry in [-max_abs, max_abs].
inline std::pair<IMat3, IMat3> random_pair(std::mt19937_64& rng, long long max_abs) {
  const IMat3 id = identity3<long long>(), zero{};
  for (;;) {
    SymplecticMat m = SymplecticMat::identity();
    long long len = uniform_int(rng, 1, 6);
    for (long long step = 0; step < len; ++step) {
      SymplecticMat g;
      switch (uniform_int(rng, 0, 3)) {
        case 0: {
          IMat3 s{};
          for (int i = 0; i < 3; ++i)
            for (int j = i; j < 3; ++j) s[i][j] = s[j][i] = uniform_int(rng, -1, 1);
          g = SymplecticMat::from_blocks(id, s, zero, id);
          break;
        }
        case 1:
          g = SymplecticMat::J();
          break;
        case 2: {
          // Inversion in one coordinate only.
          auto i = static_cast<std::size_t>(uniform_int(rng, 0, 2));
          IMat3 a = id, b{}, c{}, d = id;
          a[i][i] = 0;
          d[i][i] = 0;
          b[i][i] = -1;
          c[i][i] = 1;
          g = SymplecticMat::from_blocks(a, b, c, d);
          break;
        }
        default: {
          IMat3 u = random_unimodular(rng, 1);
          g = SymplecticMat::from_blocks(transpose(inverse_unimodular(u)), zero, zero, u);
        }
      }
      m = g * m;
    }
    IMat3 c = m.C(), d = m.D();
    long long mx = 0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) mx = std::max({mx, std::llabs(c[i][j]), std::llabs(d[i][j])});
    if (mx <= max_abs) return {c, d};
  }
}

// All 3x3 integer matrices with entries in [-m, m] and det = +-1 (or = +1 when special).
inline std::vector<IMat3> small_unimodular(long long m, bool special) {
  std::vector<IMat3> out;
  long long w = 2 * m + 1, total = 1;
  for (int k = 0; k < 9; ++k) total *= w;
  for (long long idx = 0; idx < total; ++idx) {
    IMat3 u{};
    long long r = idx;
    for (int k = 0; k < 9; ++k) {
      u[k / 3][k % 3] = r % w - m;
      r /= w;
    }
    long long d = det3_exact(u);
    if (d == 1 || (!special && d == -1)) out.push_back(u);
  }
  return out;
}

inline long long brute_eps(const HalfIntegralForm& t, const std::vector<IMat3>& sl3) {
  long long n = 0;
  for (const auto& g : sl3)
    if (congruence(t, g) == t) ++n;
  return n;
}

// SL3 automorphisms by scanning a box that provably contains every column:
// T[v] >= lambda_min |v|^2 and lambda_min >= det / trace^2.
inline long long brute_eps_box(const HalfIntegralForm& t) {
  PosDefForm y = t.to_real();
  real tr = y.y1 + y.y2 + y.y3;
  long long box = static_cast<long long>(std::floor(std::sqrt(real(t.t3) * tr * tr / y.det()))) + 1;
  std::vector<IVec3> cols[3];
  const long long diag[3] = {t.t1, t.t2, t.t3};
  for (long long a = -box; a <= box; ++a)
    for (long long b = -box; b <= box; ++b)
      for (long long c = -box; c <= box; ++c) {
        IVec3 v{a, b, c};
        long long val = t.value(v);
        for (int i = 0; i < 3; ++i)
          if (val == diag[i]) cols[i].push_back(v);
      }
  long long n = 0;
  for (const auto& v1 : cols[0])
    for (const auto& v2 : cols[1])
      for (const auto& v3 : cols[2]) {
        IMat3 u{};
        for (std::size_t r = 0; r < 3; ++r) u[r] = {v1[r], v2[r], v3[r]};
        if (det3_exact(u) == 1 && congruence(t, u) == t) ++n;
      }
  return n;
}

// Class representatives with det <= n from reducing every weakly reduced form:
// t1 <= t2 <= t3, |b12|, |b13| <= t1, |b23| <= t2 and t1 t2 t3 <= 2 det.
inline std::set<HalfIntegralForm> brute_class_reps(long long n) {
  std::set<HalfIntegralForm> reps;
  for (long long t1 = 1; t1 * t1 * t1 <= 2 * n; ++t1)
    for (long long t2 = t1; t1 * t2 * t2 <= 2 * n; ++t2)
      for (long long t3 = t2; t1 * t2 * t3 <= 2 * n; ++t3)
        for (long long b12 = -t1; b12 <= t1; ++b12)
          for (long long b13 = -t1; b13 <= t1; ++b13)
            for (long long b23 = -t2; b23 <= t2; ++b23) {
              HalfIntegralForm t{t1, t2, t3, b12, b13, b23};
              if (!t.is_positive_definite() || t.det() > rational(n)) continue;
              reps.insert(minkowski_reduce(t).form);
            }
  return reps;
}

inline IMatN left_mul(const IMat3& u, const IMatN& a) {
  IMatN r(3, std::vector<long long>(a[0].size(), 0));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < a[0].size(); ++j)
      for (std::size_t k = 0; k < 3; ++k) r[i][j] += u[i][k] * a[k][j];
  return r;
}

// Some U with entries in [-bound, bound] and U [C1 D1] = [C2 D2], searched row by row.
inline bool brute_left_associated(const IMatN& p, const IMatN& q, long long bound) {
  std::vector<IVec3> rows[3];
  for (long long a = -bound; a <= bound; ++a)
    for (long long b = -bound; b <= bound; ++b)
      for (long long c = -bound; c <= bound; ++c)
        for (std::size_t i = 0; i < 3; ++i) {
          bool ok = true;
          for (std::size_t j = 0; j < 6 && ok; ++j) ok = a * p[0][j] + b * p[1][j] + c * p[2][j] == q[i][j];
          if (ok) rows[i].push_back({a, b, c});
        }
  for (const auto& r0 : rows[0])
    for (const auto& r1 : rows[1])
      for (const auto& r2 : rows[2]) {
        long long d = det3_exact(IMat3{r0, r1, r2});
        if (d == 1 || d == -1) return true;
      }
  return false;
}

inline CoprimePair from_block(const IMatN& a) {
  CoprimePair p;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      p.C[i][j] = a[i][j];
      p.D[i][j] = a[i][j + 3];
    }
  return p;
}

// Sum over coprime (c, d) mod sign of Im(gamma tau)^s = (t / |c tau + d|^2)^s with
// |c tau + d|^2 / t <= bound, plus the leading-order tail (3/pi) bound^{1-s}/(s-1).
inline cplx coprime_E(cplx tau, real s, real bound) {
  real t = tau.imag();
  KahanSum<real> acc;
  long long cmax = static_cast<long long>(std::sqrt(bound / t)) + 1;
  for (long long c = 0; c <= cmax; ++c) {
    real lim = std::sqrt(bound * t);
    real center = -static_cast<real>(c) * tau.real();
    for (auto d = static_cast<long long>(std::floor(center - lim)); d <= static_cast<long long>(std::ceil(center + lim)); ++d) {
      if (std::gcd(c, d) != 1) continue;
      if (c == 0 && d != 1) continue;
      real q = std::norm(static_cast<real>(c) * tau + static_cast<real>(d)) / t;
      if (q <= bound) acc.add(std::pow(q, -s));
    }
  }
  return acc.value() + 3 / kPi * std::pow(bound, 1 - s) / (s - 1);
}

inline real rel_err(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), real(1e-300)); }

}  // namespace s3::testing
