#include "siegel3/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace s3 {

// ---- HalfIntegralForm -------------------------------------------------------

HalfIntegralForm HalfIntegralForm::from_doubled(const IMat3& g) {
  if (g[0][0] % 2 || g[1][1] % 2 || g[2][2] % 2) throw DomainError("2T must have an even diagonal");
  if (g[0][1] != g[1][0] || g[0][2] != g[2][0] || g[1][2] != g[2][1]) throw DomainError("2T must be symmetric");
  return {g[0][0] / 2, g[1][1] / 2, g[2][2] / 2, g[0][1], g[0][2], g[1][2]};
}

HalfIntegralForm HalfIntegralForm::parse(const std::string& csv) {
  std::vector<long long> v;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t pos = 0;
    long long x = 0;
    try {
      x = std::stoll(item, &pos);
    } catch (const std::exception&) {
      throw ParseError("form entry is not an integer: '" + item + "'");
    }
    if (pos != item.size()) throw ParseError("form entry is not an integer: '" + item + "'");
    v.push_back(x);
  }
  if (v.size() != 6) throw ParseError("form needs 6 comma-separated integers t1,t2,t3,b12,b13,b23");
  return {v[0], v[1], v[2], v[3], v[4], v[5]};
}

IMat3 HalfIntegralForm::doubled() const {
  return {{{2 * t1, b12, b13}, {b12, 2 * t2, b23}, {b13, b23, 2 * t3}}};
}

long long HalfIntegralForm::value(const IVec3& v) const {
  return t1 * v[0] * v[0] + t2 * v[1] * v[1] + t3 * v[2] * v[2] + b12 * v[0] * v[1] + b13 * v[0] * v[2] +
         b23 * v[1] * v[2];
}

long long HalfIntegralForm::bilinear2(const IVec3& v, const IVec3& w) const {
  IMat3 g = doubled();
  long long acc = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) acc += v[i] * g[i][j] * w[j];
  return acc;
}

long long HalfIntegralForm::det_doubled() const { return det3_exact(doubled()); }

rational HalfIntegralForm::det() const { return rational(det_doubled(), 8); }

bool HalfIntegralForm::is_positive_definite() const {
  IMat3 g = doubled();
  return g[0][0] > 0 && g[0][0] * g[1][1] - g[0][1] * g[0][1] > 0 && det3_exact(g) > 0;
}

PosDefForm HalfIntegralForm::to_real() const {
  return {static_cast<real>(t1),       static_cast<real>(t2),       static_cast<real>(t3),
          static_cast<real>(b12) / 2, static_cast<real>(b13) / 2, static_cast<real>(b23) / 2};
}

std::string HalfIntegralForm::str() const {
  std::ostringstream os;
  os << t1 << ',' << t2 << ',' << t3 << ',' << b12 << ',' << b13 << ',' << b23;
  return os.str();
}

HalfIntegralForm congruence(const HalfIntegralForm& t, const IMat3& u) {
  return HalfIntegralForm::from_doubled(mul_exact(mul_exact(transpose(u), t.doubled()), u));
}

// ---- lattice enumerations ---------------------------------------------------

std::size_t dual_lattice_size(int max_abs) {
  std::size_t w = 2 * static_cast<std::size_t>(max_abs) + 1;
  return w * w * w * w * w * w;
}

IMat3 dual_lattice_element(int max_abs, std::size_t index) {
  const std::size_t w = 2 * static_cast<std::size_t>(max_abs) + 1;
  std::array<long long, 6> e{};
  for (int k = 5; k >= 0; --k) {
    e[k] = static_cast<long long>(index % w) - max_abs;
    index /= w;
  }
  // (a b c; b d e; c e f)
  return {{{e[0], e[1], e[2]}, {e[1], e[3], e[4]}, {e[2], e[4], e[5]}}};
}

std::vector<IMat3> enumerate_dual_lattice(int max_abs) {
  if (max_abs < 0) throw DomainError("max_abs must be >= 0");
  std::vector<IMat3> out;
  std::size_t n = dual_lattice_size(max_abs);
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(dual_lattice_element(max_abs, i));
  return out;
}

std::vector<HalfIntegralForm> enumerate_J(long long trace_bound) {
  std::vector<HalfIntegralForm> out;
  for (long long t1 = 1; t1 <= trace_bound - 2; ++t1)
    for (long long t2 = 1; t1 + t2 <= trace_bound - 1; ++t2)
      for (long long t3 = 1; t1 + t2 + t3 <= trace_bound; ++t3) {
        // |b_ij| < 2 sqrt(t_i t_j) from the 2x2 principal minors.
        auto lim = [](long long a, long long b) {
          long long m = static_cast<long long>(std::sqrt(static_cast<double>(4 * a * b)));
          while (m * m >= 4 * a * b) --m;
          while ((m + 1) * (m + 1) < 4 * a * b) ++m;
          return m;
        };
        long long l12 = lim(t1, t2), l13 = lim(t1, t3), l23 = lim(t2, t3);
        for (long long b12 = -l12; b12 <= l12; ++b12)
          for (long long b13 = -l13; b13 <= l13; ++b13)
            for (long long b23 = -l23; b23 <= l23; ++b23) {
              HalfIntegralForm t{t1, t2, t3, b12, b13, b23};
              if (t.det_doubled() > 0) out.push_back(t);
            }
      }
  return out;
}

void for_each_short_vector(const RMat3& q, real radius, const std::function<void(const IVec3&)>& fn) {
  // q[v] = A (v1 + m12 v2 + m13 v3)^2 + B (v2 + m23 v3)^2 + C v3^2
  const real A = q[0][0];
  const real m12 = q[0][1] / A, m13 = q[0][2] / A;
  const real B = q[1][1] - q[0][1] * q[0][1] / A;
  const real m23 = (q[1][2] - q[0][1] * q[0][2] / A) / B;
  const real C = q[2][2] - q[0][2] * q[0][2] / A - B * m23 * m23;
  if (!(A > 0 && B > 0 && C > 0)) throw NotPositiveDefinite("short-vector enumeration needs a positive form");
  const real R = radius * (1 + 1e-10) + 1e-10;
  const real eps = 1e-9;
  long long v3max = static_cast<long long>(std::floor(std::sqrt(R / C) + eps));
  for (long long v3 = -v3max; v3 <= v3max; ++v3) {
    real r3 = R - C * v3 * v3;
    if (r3 < 0) continue;
    real c2 = -m23 * v3, w2 = std::sqrt(r3 / B);
    for (long long v2 = static_cast<long long>(std::ceil(c2 - w2 - eps));
         v2 <= static_cast<long long>(std::floor(c2 + w2 + eps)); ++v2) {
      real d2 = v2 + m23 * v3;
      real r2 = r3 - B * d2 * d2;
      if (r2 < 0) r2 = 0;
      real c1 = -(m12 * v2 + m13 * v3), w1 = std::sqrt(r2 / A);
      for (long long v1 = static_cast<long long>(std::ceil(c1 - w1 - eps));
           v1 <= static_cast<long long>(std::floor(c1 + w1 + eps)); ++v1) {
        if (v1 == 0 && v2 == 0 && v3 == 0) continue;
        fn(IVec3{v1, v2, v3});
      }
    }
  }
}

// ---- vector helpers -------------------------------------------------------------

IVec3 cross(const IVec3& a, const IVec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

long long dot(const IVec3& a, const IVec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

long long content(const IVec3& v) { return std::gcd(std::gcd(v[0], v[1]), v[2]); }

bool is_primitive(const IVec3& v) { return content(v) == 1; }

bool is_sign_canonical(const IVec3& v) {
  for (long long x : v)
    if (x != 0) return x > 0;
  return false;
}

IMat3 row_completion(const IVec3& n) {
  if (!is_primitive(n)) throw DomainError("row_completion needs a primitive vector");
  IVec3 r = n;
  IMat3 u = identity3<long long>();
  for (;;) {
    int p = -1;
    for (int j = 0; j < 3; ++j)
      if (r[j] != 0 && (p < 0 || std::llabs(r[j]) < std::llabs(r[p]))) p = j;
    bool done = true;
    for (int j = 0; j < 3; ++j) {
      if (j == p || r[j] == 0) continue;
      long long q = r[j] / r[p];
      r[j] -= q * r[p];
      for (int k = 0; k < 3; ++k) u[k][j] -= q * u[k][p];
      if (r[j] != 0) done = false;
    }
    if (!done) continue;
    if (r[p] < 0)
      for (int k = 0; k < 3; ++k) u[k][p] = -u[k][p];
    if (p != 0)
      for (int k = 0; k < 3; ++k) std::swap(u[k][0], u[k][p]);
    return u;
  }
}

// ---- reduction ------------------------------------------------------------------

bool satisfies_reduction_inequalities(const HalfIntegralForm& t) {
  return 1 <= t.t1 && t.t1 <= t.t2 && t.t2 <= t.t3 && 0 <= t.b12 && t.b12 <= t.t1 && -t.t1 <= t.b13 &&
         t.b13 <= t.t1 && 0 <= t.b23 && t.b23 <= t.t2;
}

namespace {

IMat3 columns(const IVec3& a, const IVec3& b, const IVec3& c) {
  return {{{a[0], b[0], c[0]}, {a[1], b[1], c[1]}, {a[2], b[2], c[2]}}};
}

long long floor_div(long long a, long long b) {  // b > 0
  long long q = a / b;
  if ((a % b != 0) && (a < 0)) --q;
  return q;
}

// Pairwise size reduction of the Gram matrix 2T; returns the basis change.
IMat3 pairwise_reduce(const HalfIntegralForm& t) {
  IMat3 basis = identity3<long long>();
  IMat3 g0 = t.doubled();
  for (;;) {
    IMat3 g = mul_exact(mul_exact(transpose(basis), g0), basis);
    bool changed = false;
    for (int i = 0; i < 3 && !changed; ++i)
      for (int j = 0; j < 3 && !changed; ++j) {
        if (i == j) continue;
        long long gii = g[i][i], gij = g[i][j];
        if (2 * std::llabs(gij) > gii) {
          long long r = floor_div(2 * gij + gii, 2 * gii);  // nearest integer to gij/gii
          for (int k = 0; k < 3; ++k) basis[k][j] -= r * basis[k][i];
          changed = true;
        }
      }
    if (!changed) break;
  }
  // Sort columns by diagonal value (stable).
  IMat3 g = mul_exact(mul_exact(transpose(basis), g0), basis);
  std::array<int, 3> ord{0, 1, 2};
  std::stable_sort(ord.begin(), ord.end(), [&](int a, int b) { return g[a][a] < g[b][b]; });
  IMat3 sorted{};
  for (int c = 0; c < 3; ++c)
    for (int k = 0; k < 3; ++k) sorted[k][c] = basis[k][ord[c]];
  return sorted;
}

bool lex_less(const IMat3& a, const IMat3& b) {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (a[i][j] != b[i][j]) return a[i][j] < b[i][j];
  return false;
}

struct ShortVec {
  IVec3 v;
  long long value;
};

std::vector<ShortVec> short_vectors(const HalfIntegralForm& t, long long radius) {
  std::vector<ShortVec> out;
  RMat3 q = cast3<real>(t.doubled());
  for_each_short_vector(q, static_cast<real>(2 * radius), [&](const IVec3& v) {
    long long val = t.value(v);
    if (val <= radius) out.push_back({v, val});
  });
  std::stable_sort(out.begin(), out.end(), [](const ShortVec& a, const ShortVec& b) {
    if (a.value != b.value) return a.value < b.value;
    return a.v < b.v;
  });
  return out;
}

}  // namespace

ReducedForm minkowski_reduce(const HalfIntegralForm& t) {
  if (!t.is_positive_definite()) throw NotPositiveDefinite("minkowski_reduce needs a positive-definite form");
  IMat3 u_pre = pairwise_reduce(t);
  HalfIntegralForm tp = congruence(t, u_pre);
  long long radius = std::max({tp.t1, tp.t2, tp.t3});
  std::vector<ShortVec> sv = short_vectors(tp, radius);

  // Successive minima from the sorted list.
  std::array<long long, 3> lambda{};
  std::vector<IVec3> span;
  for (const auto& s : sv) {
    bool indep = false;
    if (span.empty()) {
      indep = true;
    } else if (span.size() == 1) {
      indep = cross(span[0], s.v) != IVec3{0, 0, 0};
    } else if (span.size() == 2) {
      indep = det3_exact(columns(span[0], span[1], s.v)) != 0;
    }
    if (indep) {
      lambda[span.size()] = s.value;
      span.push_back(s.v);
      if (span.size() == 3) break;
    }
  }
  if (span.size() != 3) throw Error("minkowski_reduce: short-vector search incomplete");

  auto with_value = [&](long long val) {
    std::vector<IVec3> r;
    for (const auto& s : sv)
      if (s.value == val) r.push_back(s.v);
    return r;
  };
  std::vector<IVec3> V1 = with_value(lambda[0]), V2 = with_value(lambda[1]), V3 = with_value(lambda[2]);

  bool have = false;
  HalfIntegralForm best;
  IMat3 best_u{};
  for (const auto& v1 : V1)
    for (const auto& v2 : V2) {
      long long b12 = tp.bilinear2(v1, v2);
      if (b12 < 0) continue;
      for (const auto& v3 : V3) {
        long long b23 = tp.bilinear2(v2, v3);
        if (b23 < 0) continue;
        IMat3 uc = columns(v1, v2, v3);
        long long d = det3_exact(uc);
        if (d != 1 && d != -1) continue;
        HalfIntegralForm cand{lambda[0], lambda[1], lambda[2], b12, tp.bilinear2(v1, v3), b23};
        IMat3 u_total = mul_exact(u_pre, uc);
        if (!have || cand < best || (cand == best && lex_less(u_total, best_u))) {
          best = cand;
          best_u = u_total;
          have = true;
        }
      }
    }
  if (!have) throw Error("minkowski_reduce: no reduced basis found");
  if (best == t) best_u = identity3<long long>();
  if (congruence(t, best_u) != best) throw Error("minkowski_reduce: internal consistency failure");
  return {best, best_u};
}

bool is_canonical(const HalfIntegralForm& t) {
  return t.is_positive_definite() && satisfies_reduction_inequalities(t) && minkowski_reduce(t).form == t;
}

long long automorphism_count(const HalfIntegralForm& t) {
  HalfIntegralForm r = minkowski_reduce(t).form;
  std::vector<ShortVec> sv = short_vectors(r, r.t3);
  auto with_value = [&](long long val) {
    std::vector<IVec3> out;
    for (const auto& s : sv)
      if (s.value == val) out.push_back(s.v);
    return out;
  };
  std::vector<IVec3> V1 = with_value(r.t1), V2 = with_value(r.t2), V3 = with_value(r.t3);
  long long count = 0;
  for (const auto& v1 : V1)
    for (const auto& v2 : V2) {
      if (r.bilinear2(v1, v2) != r.b12) continue;
      for (const auto& v3 : V3) {
        if (r.bilinear2(v1, v3) != r.b13 || r.bilinear2(v2, v3) != r.b23) continue;
        if (det3_exact(columns(v1, v2, v3)) == 1) ++count;
      }
    }
  return count;
}

std::vector<ClassInfo> reduced_classes(rational det_bound) {
  if (det_bound <= 0) throw DomainError("det_bound must be positive");
  // Reduced ternary forms satisfy t1 t2 t3 <= 2 det T; the search box uses
  // twice that as a safety margin.
  long long prod_cap = boost::rational_cast<long long>(det_bound * 4);
  std::vector<ClassInfo> out;
  for (long long t1 = 1; t1 * t1 * t1 <= prod_cap; ++t1)
    for (long long t2 = t1; t1 * t2 * t2 <= prod_cap; ++t2)
      for (long long t3 = t2; t1 * t2 * t3 <= prod_cap; ++t3)
        for (long long b12 = 0; b12 <= t1; ++b12)
          for (long long b13 = -t1; b13 <= t1; ++b13)
            for (long long b23 = 0; b23 <= t2; ++b23) {
              HalfIntegralForm t{t1, t2, t3, b12, b13, b23};
              // T[(s1, s2, 1)] >= t3 for all signs (necessary Minkowski condition).
              bool ok = true;
              for (int s1 : {-1, 1})
                for (int s2 : {-1, 1})
                  if (t1 + t2 + s1 * s2 * b12 + s1 * b13 + s2 * b23 < 0) ok = false;
              if (!ok) continue;
              long long d2 = t.det_doubled();
              if (d2 <= 0 || rational(d2, 8) > det_bound) continue;
              if (minkowski_reduce(t).form != t) continue;
              out.push_back({{t, identity3<long long>()}, rational(d2, 8), automorphism_count(t)});
            }
  std::stable_sort(out.begin(), out.end(), [](const ClassInfo& a, const ClassInfo& b) {
    if (a.det != b.det) return a.det < b.det;
    return a.rep.form < b.rep.form;
  });
  return out;
}

std::string classes_csv(const std::vector<ClassInfo>& classes) {
  std::ostringstream os;
  os << "t1,t2,t3,b12,b13,b23,det_num,det_den,eps\n";
  for (const auto& c : classes)
    os << c.rep.form.str() << ',' << c.det.numerator() << ',' << c.det.denominator() << ',' << c.eps << '\n';
  return os.str();
}

}  // namespace s3
