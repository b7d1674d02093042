#include "siegel3/symplectic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>

#include "siegel3/parallel.hpp"
#include "siegel3/special.hpp"

namespace s3 {

namespace {

long long cmul(long long a, long long b) {
  long long r;
  if (__builtin_mul_overflow(a, b, &r)) throw Overflow("integer overflow in matrix arithmetic");
  return r;
}

long long csub(long long a, long long b) {
  long long r;
  if (__builtin_sub_overflow(a, b, &r)) throw Overflow("integer overflow in matrix arithmetic");
  return r;
}

long long floor_div(long long a, long long b) {
  long long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

void row_axpy(IMatN& a, std::size_t dst, std::size_t src, long long q) {
  if (q == 0) return;
  for (std::size_t c = 0; c < a[dst].size(); ++c) a[dst][c] = csub(a[dst][c], cmul(q, a[src][c]));
}

void col_axpy(IMatN& a, std::size_t dst, std::size_t src, long long q) {
  if (q == 0) return;
  for (auto& row : a) row[dst] = csub(row[dst], cmul(q, row[src]));
}

void swap_cols(IMatN& a, std::size_t i, std::size_t j) {
  for (auto& row : a) std::swap(row[i], row[j]);
}

cplx ipow(cplx z, long long n) {
  bool inv = n < 0;
  unsigned long long m = inv ? -static_cast<unsigned long long>(n) : static_cast<unsigned long long>(n);
  cplx r = 1;
  while (m) {
    if (m & 1) r *= z;
    z *= z;
    m >>= 1;
  }
  return inv ? cplx(1) / r : r;
}

// omega(r, s) = c_r . d_s - d_r . c_s for rows of [C D].
long long omega(const std::vector<long long>& r, const std::vector<long long>& s, std::size_t n) {
  long long acc = 0;
  for (std::size_t l = 0; l < n; ++l) acc += r[l] * s[n + l] - r[n + l] * s[l];
  return acc;
}

IMat3 transpose_i(const IMat3& a) { return transpose(a); }

cplx trace_pair(const HalfIntegralForm& t, const SymC3& w) {
  return real(t.t1) * w.tau1 + real(t.t2) * w.tau2 + real(t.t3) * w.tau3 + real(t.b12) * w.z1 + real(t.b13) * w.z2 +
         real(t.b23) * w.z3;
}

}  // namespace

std::vector<long long> smith_divisors(IMatN a) {
  std::vector<long long> d;
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    for (;;) {
      std::size_t bi = rows, bj = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (a[i][j] != 0 && (bi == rows || std::llabs(a[i][j]) < std::llabs(a[bi][bj]))) {
            bi = i;
            bj = j;
          }
      if (bi == rows) return d;
      std::swap(a[t], a[bi]);
      swap_cols(a, t, bj);
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        row_axpy(a, i, t, a[i][t] / a[t][t]);
        clean = clean && a[i][t] == 0;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        col_axpy(a, j, t, a[t][j] / a[t][t]);
        clean = clean && a[t][j] == 0;
      }
      if (!clean) continue;
      // Enforce d_t | every remaining entry.
      std::size_t bad = rows;
      for (std::size_t i = t + 1; i < rows && bad == rows; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (a[i][j] % a[t][t] != 0) {
            bad = i;
            break;
          }
      if (bad == rows) break;
      row_axpy(a, t, bad, -1);
    }
    d.push_back(std::llabs(a[t][t]));
  }
  return d;
}

IMatN hermite_normal_form(IMatN a) {
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    for (;;) {
      std::size_t best = rows;
      for (std::size_t i = r; i < rows; ++i)
        if (a[i][c] != 0 && (best == rows || std::llabs(a[i][c]) < std::llabs(a[best][c]))) best = i;
      if (best == rows) break;
      std::swap(a[r], a[best]);
      bool done = true;
      for (std::size_t i = r + 1; i < rows; ++i) {
        row_axpy(a, i, r, a[i][c] / a[r][c]);
        done = done && a[i][c] == 0;
      }
      if (done) break;
    }
    if (a[r][c] == 0) continue;
    if (a[r][c] < 0)
      for (auto& x : a[r]) x = -x;
    for (std::size_t i = 0; i < r; ++i) row_axpy(a, i, r, floor_div(a[i][c], a[r][c]));
    ++r;
  }
  a.resize(r);
  return a;
}

bool is_coprime_symmetric_block(const IMatN& cd) {
  const std::size_t n = cd.size();
  for (const auto& row : cd)
    if (row.size() != 2 * n) return false;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (omega(cd[i], cd[j], n) != 0) return false;
  auto d = smith_divisors(cd);
  return d.size() == n && std::all_of(d.begin(), d.end(), [](long long x) { return x == 1; });
}

std::vector<IMatN> enumerate_pair_blocks(int n, int max_abs) {
  if (n < 1 || max_abs < 1) throw DomainError("enumerate_pair_blocks: need n >= 1 and max_abs >= 1");
  const std::size_t N = static_cast<std::size_t>(n), W = 2 * N;
  const long long m = max_abs;
  // Candidate rows grouped by pivot column: zeros before the pivot, pivot in [1, m].
  std::vector<std::vector<std::vector<long long>>> by_pivot(W);
  for (std::size_t p = 0; p < W; ++p) {
    std::vector<long long> row(W, 0);
    std::size_t free = W - p - 1;
    long long combos = 1;
    for (std::size_t i = 0; i < free; ++i) combos *= 2 * m + 1;
    for (long long v = 1; v <= m; ++v)
      for (long long idx = 0; idx < combos; ++idx) {
        row[p] = v;
        long long x = idx;
        for (std::size_t i = W; i-- > p + 1;) {
          row[i] = x % (2 * m + 1) - m;
          x /= 2 * m + 1;
        }
        by_pivot[p].push_back(row);
      }
  }
  std::vector<IMatN> out;
  IMatN cur;
  std::vector<std::size_t> pivots;
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == N) {
      if (is_coprime_symmetric_block(cur)) out.push_back(cur);
      return;
    }
    std::size_t p0 = i == 0 ? 0 : pivots.back() + 1;
    for (std::size_t p = p0; p + (N - i) <= W; ++p)
      for (const auto& row : by_pivot[p]) {
        bool ok = true;
        for (std::size_t j = 0; j < i && ok; ++j)
          ok = cur[j][p] >= 0 && cur[j][p] < row[p] && omega(cur[j], row, N) == 0;
        if (!ok) continue;
        cur.push_back(row);
        pivots.push_back(p);
        self(self, i + 1);
        cur.pop_back();
        pivots.pop_back();
      }
  };
  rec(rec, 0);
  return out;
}

IMatN pair_block(const IMat3& c, const IMat3& d) {
  IMatN a(3, std::vector<long long>(6));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      a[i][j] = c[i][j];
      a[i][j + 3] = d[i][j];
    }
  return a;
}

bool is_coprime_symmetric(const IMat3& c, const IMat3& d) { return is_coprime_symmetric_block(pair_block(c, d)); }

namespace {

CoprimePair from_block(const IMatN& a) {
  CoprimePair p;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      p.C[i][j] = a[i][j];
      p.D[i][j] = a[i][j + 3];
    }
  return p;
}

}  // namespace

CoprimePair canonical_pair(const IMat3& c, const IMat3& d) {
  if (!is_coprime_symmetric(c, d)) throw NotCoprimePair("(C, D) is not a coprime symmetric pair");
  CoprimePair p = from_block(hermite_normal_form(pair_block(c, d)));
  p.canonical = true;
  return p;
}

std::vector<CoprimePair> enumerate_pairs(int max_abs) {
  std::vector<CoprimePair> out;
  for (const auto& b : enumerate_pair_blocks(3, max_abs)) {
    out.push_back(from_block(b));
    out.back().canonical = true;
  }
  return out;
}

SymplecticMat complete_to_symplectic(const CoprimePair& p) {
  if (!is_coprime_symmetric(p.C, p.D)) throw NotCoprimePair("complete_to_symplectic: not a coprime symmetric pair");
  // Column operations bring [C D] V to [L 0] with L lower triangular.
  IMatN a = pair_block(p.C, p.D);
  IMatN v(6, std::vector<long long>(6, 0));
  for (std::size_t i = 0; i < 6; ++i) v[i][i] = 1;
  for (std::size_t r = 0; r < 3; ++r) {
    for (;;) {
      std::size_t best = 6;
      for (std::size_t c = r; c < 6; ++c)
        if (a[r][c] != 0 && (best == 6 || std::llabs(a[r][c]) < std::llabs(a[r][best]))) best = c;
      if (best == 6) throw CompletionFailure("rank deficient block");
      swap_cols(a, r, best);
      swap_cols(v, r, best);
      bool done = true;
      for (std::size_t c = r + 1; c < 6; ++c) {
        long long q = a[r][c] / a[r][r];
        col_axpy(a, c, r, q);
        col_axpy(v, c, r, q);
        done = done && a[r][c] == 0;
      }
      if (done) break;
    }
    if (std::llabs(a[r][r]) != 1) throw CompletionFailure("block is not primitive");
  }
  // L^{-1} by forward substitution (unit diagonal up to sign).
  IMat3 l{}, linv{};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) l[i][j] = a[i][j];
  for (std::size_t j = 0; j < 3; ++j)
    for (std::size_t i = 0; i < 3; ++i) {
      long long acc = i == j ? 1 : 0;
      for (std::size_t k = 0; k < i; ++k) acc = csub(acc, cmul(l[i][k], linv[k][j]));
      linv[i][j] = acc * l[i][i];  // l[i][i] = +-1 is its own inverse
    }
  // X = V[:, 0:3] L^{-1} solves C X1 + D X2 = I.
  IMat3 x1{}, x2{};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      long long s1 = 0, s2 = 0;
      for (std::size_t k = 0; k < 3; ++k) {
        s1 += cmul(v[i][k], linv[k][j]);
        s2 += cmul(v[i + 3][k], linv[k][j]);
      }
      x1[i][j] = s1;
      x2[i][j] = s2;
    }
  IMat3 a1 = transpose_i(x2), b1 = transpose_i(x1);
  for (auto& row : b1)
    for (auto& e : row) e = -e;
  // A1 D^T - B1 C^T = I; fix A B^T symmetric with S - S^T = A1 B1^T - B1 A1^T.
  IMat3 n = mul_exact(a1, transpose_i(b1)) - mul_exact(b1, transpose_i(a1));
  IMat3 s{};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j) s[i][j] = n[i][j];
  IMat3 a0 = a1 + mul_exact(s, p.C), b0 = b1 + mul_exact(s, p.D);
  SymplecticMat m = SymplecticMat::from_blocks(a0, b0, p.C, p.D);
  if (!is_symplectic(m)) throw CompletionFailure("completion is not symplectic");
  return m;
}

std::vector<IMat3> gl3_ball(int max_abs) {
  if (max_abs < 1) throw DomainError("gl3_ball: max_abs must be >= 1");
  const long long m = max_abs;
  std::vector<IVec3> vecs;
  for (long long a = -m; a <= m; ++a)
    for (long long b = -m; b <= m; ++b)
      for (long long c = -m; c <= m; ++c)
        if ((a || b || c) && a * a + b * b + c * c <= m * m) vecs.push_back({a, b, c});
  std::vector<IMat3> out;
  for (const auto& v1 : vecs)
    for (const auto& v2 : vecs)
      for (const auto& v3 : vecs) {
        IMat3 u{};
        for (std::size_t r = 0; r < 3; ++r) u[r] = {v1[r], v2[r], v3[r]};
        long long d = det3_exact(u);
        if (d == 1 || d == -1) out.push_back(u);
      }
  std::sort(out.begin(), out.end());
  return out;
}

PoincareResult poincare_trunc(int k, const HalfIntegralForm& t, const SymC3& z, const std::vector<CoprimePair>& pairs,
                              const std::vector<IMat3>& ball, unsigned threads) {
  if (k <= 6 || k % 2 != 0) throw DomainError("poincare_trunc: k must be even and > 6");
  if (!is_siegel_point(z)) throw DomainError("poincare_trunc: Z must be a Siegel point");
  // Ball elements with equal T[U] give equal summands; sum each distinct form once.
  std::map<HalfIntegralForm, long long> tu;
  for (const auto& u : ball) ++tu[congruence(t, u)];
  auto parts = map_chunks<cplx>(pairs.size(), threads, [&](std::size_t i) {
    MobiusResult mr = mobius(complete_to_symplectic(pairs[i]), z);
    KahanSum<cplx> acc;
    for (const auto& [f, mult] : tu) acc.add(real(mult) * std::exp(2 * kPi * kI * trace_pair(f, mr.point)));
    return acc.value() * ipow(mr.j, -k);
  });
  KahanSum<cplx> total;
  for (const auto& p : parts) total.add(p);
  PoincareResult r;
  r.value = real(0.5) * total.value();
  r.pairs_used = pairs.size();
  r.gl3_ball_size = ball.size();
  r.terms = pairs.size() * ball.size();
  return r;
}

PoincareResult poincare_trunc(int k, const HalfIntegralForm& t, const SymC3& z, int max_abs, unsigned threads) {
  return poincare_trunc(k, t, z, enumerate_pairs(max_abs), gl3_ball(max_abs), threads);
}

cplx kernel_prefactor(const TripleS& e) {
  cplx num = std::exp(e.weight() * std::log(cplx(0, -2 * kPi)));
  cplx den = complex_gamma(e.s + e.w + e.u - 1.0) * complex_gamma(e.w + e.u - 0.5) * complex_gamma(e.u);
  return real(2) / std::pow(kPi, real(1.5)) * num / den;
}

KernelResult kernel_trunc(int k, const TripleS& e, const SymC3& z, rational det_bound, const TruncationSpec& flag_trunc,
                          int max_abs, unsigned threads) {
  cplx pre = kernel_prefactor(e);
  KernelResult r;
  r.outside_region = k <= 22;
  auto pairs = enumerate_pairs(max_abs);
  auto ball = gl3_ball(max_abs);
  r.pairs_used = pairs.size();
  r.gl3_ball_size = ball.size();
  if (det_bound <= 0) {
    r.value = pre * real(0);
    return r;
  }
  auto classes = reduced_classes(det_bound);
  TripleS ee{e.w, e.s, -e.s - e.w - e.u + 2.0};
  KahanSum<cplx> acc;
  for (const auto& c : classes) {
    SeriesResult E = selberg_E(c.rep.form.to_real(), ee, flag_trunc, threads);
    r.outside_region = r.outside_region || E.outside_region;
    cplx p = poincare_trunc(k, c.rep.form, z, pairs, ball, threads).value;
    acc.add(E.value * p / static_cast<real>(c.eps));
  }
  r.classes_used = classes.size();
  r.value = pre * acc.value();
  return r;
}

CosetLipschitz coset_lipschitz(int k, const TripleS& e, const CoprimePair& p, const SymC3& z, int max_abs,
                               long long trace_bound, unsigned threads) {
  MobiusResult mr = mobius(complete_to_symplectic(p), z);
  cplx jk = ipow(mr.j, -k);
  CosetLipschitz r;
  r.image = mr.point;
  r.j = mr.j;
  r.lhs = lipschitz_lhs(e, mr.point, max_abs, threads).value * jk;
  r.rhs = lipschitz_rhs(e, mr.point, trace_bound).value * jk;
  r.relative_gap = relative_gap(r.lhs, r.rhs);
  return r;
}

}  // namespace s3
