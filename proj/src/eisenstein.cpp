#include "siegel3/eisenstein.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "siegel3/parallel.hpp"
#include "siegel3/special.hpp"

namespace s3 {

namespace {

constexpr real kInf = std::numeric_limits<real>::infinity();

// Exclusive of the zero vector; calls fn(v, q[v]) for q[v] <= bound in a fixed order.
template <class F>
void for_each_vector(const PosDefForm& q, int dim, real bound, F fn) {
  if (dim == 3) {
    for_each_short_vector(q.matrix(), bound, [&](const IVec3& v) {
      real val = q.value(v);
      if (val <= bound) fn(v, val);
    });
    return;
  }
  // dim 2: q[(a, b)] = y1 a^2 + 2 y4 a b + y2 b^2.
  real d2 = q.det2();
  long long bmax = static_cast<long long>(std::floor(std::sqrt(bound * q.y1 / d2) + 1e-9));
  for (long long b = -bmax; b <= bmax; ++b) {
    real rest = (bound - d2 * static_cast<real>(b * b) / q.y1) / q.y1;
    if (rest < -1e-12) continue;
    real c = -q.y4 * static_cast<real>(b) / q.y1, w = std::sqrt(std::max<real>(rest, 0));
    for (long long a = static_cast<long long>(std::ceil(c - w - 1e-9));
         a <= static_cast<long long>(std::floor(c + w + 1e-9)); ++a) {
      if (a == 0 && b == 0) continue;
      IVec3 v{a, b, 0};
      real val = q.y1 * static_cast<real>(a * a) + 2 * q.y4 * static_cast<real>(a * b) + q.y2 * static_cast<real>(b * b);
      if (val <= bound) fn(v, val);
    }
  }
}

cplx real_pow_neg(real x, cplx s) { return std::exp(-s * std::log(x)); }

real binomial(int n, int k) {
  real r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

std::vector<IVec3> primitive_vectors(const PosDefForm& q, real bound) {
  std::vector<std::pair<real, IVec3>> tmp;
  for_each_vector(q, 3, bound, [&](const IVec3& v, real val) {
    if (is_sign_canonical(v) && is_primitive(v)) tmp.push_back({val, v});
  });
  std::sort(tmp.begin(), tmp.end());
  std::vector<IVec3> out;
  out.reserve(tmp.size());
  for (const auto& p : tmp) out.push_back(p.second);
  return out;
}

std::vector<Flag> enumerate_flags(const PosDefForm& y, const TruncationSpec& t) {
  std::vector<IVec3> V = primitive_vectors(y, t.q_bound), N = primitive_vectors(y.adjugate(), t.g_bound);
  std::vector<Flag> out;
  for (const auto& v : V)
    for (const auto& n : N)
      if (dot(v, n) == 0) out.push_back({v, n});
  return out;
}

real epstein_tail(const PosDefForm& y, int dim, real sigma, real bound, std::size_t count_inside) {
  if (sigma <= dim / 2.0) return kInf;
  // Cells v + {sum x_i b_i : |x_i| <= 1/2} have radius <= rho, so the count of
  // lattice points with Y[v] <= x is at most vol_d (sqrt x + rho)^d / sqrt(det).
  real rho = 0.5 * (std::sqrt(y.y1) + std::sqrt(y.y2) + (dim == 3 ? std::sqrt(y.y3) : 0));
  real det = dim == 3 ? y.det() : y.det2();
  real vol = dim == 3 ? 4 * kPi / 3 : kPi;
  real c = vol / std::sqrt(det);
  // integral_B^inf sigma x^{-sigma-1} (N_up(x) - N(B)) dx
  real acc = 0;
  for (int k = 0; k <= dim; ++k)
    acc += c * binomial(dim, k) * std::pow(rho, dim - k) * sigma * std::pow(bound, k / 2.0 - sigma) / (sigma - k / 2.0);
  acc -= static_cast<real>(count_inside) * std::pow(bound, -sigma);
  return 0.5 * std::max<real>(acc, 0);
}

SeriesResult epstein(const PosDefForm& y, int dim, cplx s, real bound) {
  if (dim != 2 && dim != 3) throw DomainError("epstein: dim must be 2 or 3");
  KahanSum<cplx> acc;
  std::size_t n = 0;
  for_each_vector(y, dim, bound, [&](const IVec3&, real val) {
    acc.add(real_pow_neg(val, s));
    ++n;
  });
  SeriesResult r;
  r.value = 0.5 * acc.value();
  r.terms = n;
  r.tail = epstein_tail(y, dim, s.real(), bound, n);
  r.outside_region = s.real() <= dim / 2.0;
  return r;
}

SeriesResult selberg_E(const PosDefForm& y, const TripleS& e, const TruncationSpec& t, unsigned threads) {
  PosDefForm adj = y.adjugate();
  std::vector<IVec3> V = primitive_vectors(y, t.q_bound), N = primitive_vectors(adj, t.g_bound);
  std::vector<real> logN(N.size());
  for (std::size_t j = 0; j < N.size(); ++j) logN[j] = std::log(adj.value(N[j]));

  constexpr std::size_t kChunk = 32;
  std::size_t n_chunks = (V.size() + kChunk - 1) / kChunk;
  struct Part {
    cplx sum;
    std::size_t terms = 0;
  };
  auto parts = map_chunks<Part>(n_chunks, threads, [&](std::size_t c) {
    KahanSum<cplx> acc;
    std::size_t cnt = 0;
    for (std::size_t i = c * kChunk; i < std::min(V.size(), (c + 1) * kChunk); ++i) {
      real lv = std::log(y.value(V[i]));
      for (std::size_t j = 0; j < N.size(); ++j) {
        if (dot(V[i], N[j]) != 0) continue;
        acc.add(std::exp(-e.s * lv - e.w * logN[j]));
        ++cnt;
      }
    }
    return Part{acc.value(), cnt};
  });
  KahanSum<cplx> total;
  SeriesResult r;
  for (const auto& p : parts) {
    total.add(p.sum);
    r.terms += p.terms;
  }
  real det = y.det();
  r.value = std::exp(-e.u * std::log(det)) * total.value();
  r.outside_region = e.s.real() <= 1 || e.w.real() <= 1;

  // Flags sit inside (primitive v) x (primitive n), so products of Epstein
  // sums and tails bound the omitted part.
  real sig = e.s.real(), om = e.w.real();
  if (sig > 1.5 && om > 1.5) {
    SeriesResult zy = epstein(y, 3, sig, t.q_bound), za = epstein(adj, 3, om, t.g_bound);
    real fy = zy.value.real() + zy.tail, fa = za.value.real() + za.tail;
    r.tail = std::pow(det, -e.u.real()) * (zy.tail * fa + fy * za.tail);
  } else {
    r.tail = kInf;
  }
  return r;
}

SeriesResult selberg_E_cosets(const PosDefForm& y, const TripleS& e, const TruncationSpec& t) {
  cplx prefactor = std::exp(e.weight() * kPi * kI / 2.0);
  TripleS neg = -e;
  std::map<std::pair<IVec3, IVec3>, bool> seen;
  KahanSum<cplx> acc;
  SeriesResult r;
  for_each_vector(y, 3, t.q_bound, [&](const IVec3& c1, real q1) {
    if (!is_primitive(c1)) return;
    // Any plane through c1 has a basis (c1, c2) with |<c1, c2>_Y| <= Y[c1]/2,
    // hence Y[c2] <= g / Y[c1] + Y[c1] / 4.
    real r2 = t.g_bound / q1 + q1 / 4 + 1e-9;
    for_each_vector(y, 3, r2, [&](const IVec3& c2, real) {
      IVec3 nrm = cross(c1, c2);
      if (!is_primitive(nrm)) return;
      IMat3 comp = row_completion(nrm);
      IVec3 c3{comp[0][0], comp[1][0], comp[2][0]};
      IMat3 g{{{c1[0], c2[0], c3[0]}, {c1[1], c2[1], c3[1]}, {c1[2], c2[2], c3[2]}}};
      PosDefForm yg = congruence(y, g);
      if (yg.det2() > t.g_bound) return;
      IVec3 key_v = is_sign_canonical(c1) ? c1 : IVec3{-c1[0], -c1[1], -c1[2]};
      IVec3 key_n = is_sign_canonical(nrm) ? nrm : IVec3{-nrm[0], -nrm[1], -nrm[2]};
      if (!seen.emplace(std::make_pair(key_v, key_n), true).second) return;
      SymC3 iy{kI * yg.y1, kI * yg.y2, kI * yg.y3, kI * yg.y4, kI * yg.y5, kI * yg.y6};
      acc.add(prefactor * power_p(neg, iy));
      ++r.terms;
    });
  });
  r.value = acc.value();
  r.tail = kInf;
  r.outside_region = e.s.real() <= 1 || e.w.real() <= 1;
  return r;
}

PosDefForm w_tau(cplx tau) {
  real s = tau.real(), t = tau.imag();
  if (t <= 0) throw DomainError("w_tau needs Im tau > 0");
  return {1 / t, (s * s + t * t) / t, 1, -s / t, 0, 0};
}

cplx tau_of(const PosDefForm& y) { return {y.y4 / y.y1, std::sqrt(y.det2()) / y.y1}; }

SeriesResult real_analytic_E(cplx tau, cplx s, real bound) {
  SeriesResult z = epstein(w_tau(tau), 2, s, bound);
  cplx zeta = complex_zeta(2.0 * s);
  if (std::abs(zeta) < 1e-14) throw Pole("real_analytic_E: zeta(2s) vanishes");
  z.value /= zeta;
  z.tail /= std::abs(zeta);
  z.outside_region = s.real() <= 1;
  return z;
}

SeriesResult zeta_Z2(cplx s, cplx tau, real bound) {
  if (tau.imag() <= 0) throw DomainError("zeta_Z2 needs Im tau > 0");
  PosDefForm q{1, std::norm(tau), 1, tau.real(), 0, 0};  // |a + c tau|^2 in (a, c)
  SeriesResult r = epstein(q, 2, s, bound);
  r.value *= 2.0;
  r.tail *= 2;
  return r;
}

cplx zeta_Z2_explicit(cplx s, cplx tau) {
  real t = tau.imag();
  return 2.0 * complex_zeta(2.0 * s) + 2.0 * std::sqrt(kPi) * complex_gamma(s - 0.5) * complex_zeta(2.0 * s - 1.0) /
                                           complex_gamma(s) * std::exp((1.0 - 2.0 * s) * std::log(t));
}

namespace {

cplx divisor_sigma(long long n, cplx a) {
  KahanSum<cplx> acc;
  for (long long d = 1; d * d <= n; ++d) {
    if (n % d) continue;
    acc.add(std::exp(a * std::log(static_cast<real>(d))));
    if (d * d != n) acc.add(std::exp(a * std::log(static_cast<real>(n / d))));
  }
  return acc.value();
}

std::pair<cplx, std::size_t> zeta_star_bessel(cplx s, cplx tau) {
  real sg = tau.real(), t = tau.imag();
  cplx nu = s - 0.5;
  auto n_max = static_cast<long long>(std::ceil((40 + 2 * std::abs(s)) / (2 * kPi * t))) + 1;
  KahanSum<cplx> acc;
  for (long long n = 1; n <= n_max; ++n) {
    real x = 2 * kPi * static_cast<real>(n) * t;
    acc.add(std::exp(nu * std::log(static_cast<real>(n))) * divisor_sigma(n, 1.0 - 2.0 * s) * besselK(nu, x) *
            std::cos(2 * kPi * static_cast<real>(n) * sg));
  }
  cplx pre = 4.0 * std::exp(s * std::log(kPi)) / complex_gamma(s) * std::exp((0.5 - s) * std::log(t));
  return {pre * acc.value(), static_cast<std::size_t>(n_max)};
}

// sum over k >= 0 of f(x + k) with f(x) = (x^2 + C)^{-s}, x large: Euler-Maclaurin.
cplx em_tail(real x, real C, cplx s) {
  real g = x * x + C;
  auto gp = [&](cplx p) { return std::exp(-p * std::log(g)); };
  cplx f = gp(s);
  cplx f1 = -2.0 * s * x * gp(s + 1.0);
  cplx f3 = 12.0 * s * (s + 1.0) * x * gp(s + 2.0) - 8.0 * s * (s + 1.0) * (s + 2.0) * x * x * x * gp(s + 3.0);
  // integral_x^inf (y^2 + C)^{-s} dy = x^{1-2s} integral_0^1 u^{2s-2} (1 + C u^2 / x^2)^{-s} du
  QuadConfig cfg;
  cfg.rel_tol = 1e-15;
  cfg.abs_tol = 1e-300;
  auto integral = integrate_gk(
      [&](real u) {
        if (u == 0) return cplx(0);
        return std::exp((2.0 * s - 2.0) * std::log(u) - s * std::log1p(C * u * u / (x * x)));
      },
      0, 1, cfg);
  cplx in = std::exp((1.0 - 2.0 * s) * std::log(x)) * integral.value;
  return in + f / 2.0 - f1 / 12.0 + f3 / 720.0;
}

cplx zeta_star_direct(cplx s, cplx tau) {
  real sg = tau.real(), t = tau.imag();
  constexpr long long A = 200;
  cplx ratio = std::sqrt(kPi) * complex_gamma(s - 0.5) / complex_gamma(s);
  KahanSum<cplx> total;
  for (long long c = 1; static_cast<real>(c) * t <= 8 || c == 1; ++c) {
    real cs = static_cast<real>(c) * sg;
    real x0 = cs - std::round(cs);
    real C = static_cast<real>(c * c) * t * t;
    KahanSum<cplx> row;
    for (long long a = -A; a <= A; ++a) {
      real x = static_cast<real>(a) + x0;
      row.add(std::exp(-s * std::log(x * x + C)));
    }
    row.add(em_tail(static_cast<real>(A + 1) + x0, C, s));
    row.add(em_tail(static_cast<real>(A + 1) - x0, C, s));
    cplx integral = ratio * std::exp((1.0 - 2.0 * s) * std::log(static_cast<real>(c) * t));
    total.add(row.value() - integral);
  }
  return total.value();  // sum over c >= 1 equals half the sum over c != 0
}

}  // namespace

cplx zeta_Z2_star(cplx s, cplx tau) {
  if (tau.imag() < 0.1) throw DomainError("zeta_Z2_star needs Im tau >= 0.1");
  return zeta_star_bessel(s, tau).first;
}

ZetaStarReport zeta_Z2_star_report(cplx s, cplx tau) {
  if (tau.imag() < 0.1) throw DomainError("zeta_Z2_star needs Im tau >= 0.1");
  ZetaStarReport r;
  auto b = zeta_star_bessel(s, tau);
  r.bessel = b.first;
  r.bessel_terms = b.second;
  if (s.real() > 1) {
    r.direct = zeta_star_direct(s, tau);
    r.residual = std::abs(r.direct - r.bessel);
  } else {
    r.direct = std::numeric_limits<real>::quiet_NaN();
    r.residual = std::numeric_limits<real>::quiet_NaN();
  }
  return r;
}

SeriesResult mu_parabolic(const PosDefForm& y, real r, real bound) {
  if (r <= 1.5) throw DomainError("mu_parabolic needs r > 3/2");
  PosDefForm adj = y.adjugate();
  KahanSum<real> acc;
  SeriesResult out;
  for (const auto& n : primitive_vectors(adj, bound)) {
    acc.add(std::pow(adj.value(n), -r));
    ++out.terms;
  }
  real norm = std::pow(y.det(), 2 * r / 3);
  out.value = norm * acc.value();
  std::size_t inside = 0;
  for_each_vector(adj, 3, bound, [&](const IVec3&, real) { ++inside; });
  out.tail = norm * epstein_tail(adj, 3, r, bound, inside);
  return out;
}

}  // namespace s3
