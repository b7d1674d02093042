#include "siegel3/lipschitz.hpp"

#include <cmath>
#include <optional>

#include "siegel3/parallel.hpp"
#include "siegel3/special.hpp"

namespace s3 {

namespace {

std::optional<long long> as_integer(cplx x) {
  if (x.imag() != 0 || std::round(x.real()) != x.real() || std::abs(x.real()) > 1e6) return std::nullopt;
  return static_cast<long long>(x.real());
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

}  // namespace

real relative_gap(cplx a, cplx b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), real(1e-300)});
}

cplx lipschitz_term(const TripleS& e, const SymC3& z) {
  auto s = as_integer(e.s), w = as_integer(e.w), u = as_integer(e.u);
  if (s && w && u) return ipow(z.tau1, -*s) * ipow(z.det2(), -*w) * ipow(z.det(), -*u);
  return power_p(-e, z);
}

LhsResult lipschitz_lhs(const TripleS& e, const SymC3& z, int max_abs, unsigned threads) {
  if (max_abs < 0) throw DomainError("max_abs must be >= 0");
  const long long m = max_abs, w = 2 * m + 1;
  struct Part {
    cplx sum;
    real shell_outer = 0, shell_inner = 0;
  };
  auto is = as_integer(e.s), iw = as_integer(e.w), iu = as_integer(e.u);
  const bool fast = is && iw && iu;
  // Chunks are the (a, b) = (B11, B12) pairs in lexicographic order.
  auto parts = map_chunks<Part>(static_cast<std::size_t>(w * w), threads, [&](std::size_t chunk) {
    long long a = static_cast<long long>(chunk) / w - m, b = static_cast<long long>(chunk) % w - m;
    KahanSum<cplx> acc;
    KahanSum<real> outer, inner;
    auto record = [&](cplx t, long long norm) {
      acc.add(t);
      if (m >= 2 && norm == m) outer.add(std::abs(t));
      if (m >= 2 && norm == m - 1) inner.add(std::abs(t));
    };
    const cplx t1 = z.tau1 + real(a), x12 = z.z1 + real(b);
    const long long nab = std::max(std::llabs(a), std::llabs(b));
    for (long long d = -m; d <= m; ++d) {
      const cplx t2 = z.tau2 + real(d), det2 = t1 * t2 - x12 * x12;
      const cplx lead = fast ? ipow(t1, -*is) * ipow(det2, -*iw) : cplx(0);
      for (long long c = -m; c <= m; ++c)
        for (long long ee = -m; ee <= m; ++ee) {
          const cplx x13 = z.z2 + real(c), x23 = z.z3 + real(ee);
          // det = tau3' det2 + rest, affine in the tau3 shift f.
          const cplx rest = real(2) * x12 * x13 * x23 - t1 * x23 * x23 - t2 * x13 * x13;
          const long long ncde = std::max({nab, std::llabs(c), std::llabs(d), std::llabs(ee)});
          for (long long f = -m; f <= m; ++f) {
            cplx t;
            if (fast) {
              t = lead * ipow((z.tau3 + real(f)) * det2 + rest, -*iu);
            } else {
              t = power_p(-e, SymC3{t1, t2, z.tau3 + real(f), x12, x13, x23});
            }
            record(t, std::max(ncde, std::llabs(f)));
          }
        }
    }
    return Part{acc.value(), outer.value(), inner.value()};
  });
  KahanSum<cplx> total;
  KahanSum<real> outer, inner;
  for (const auto& p : parts) {
    total.add(p.sum);
    outer.add(p.shell_outer);
    inner.add(p.shell_inner);
  }
  LhsResult r;
  r.value = total.value();
  r.terms = static_cast<std::size_t>(w * w * w * w * w * w);
  // Shell sums decay like m^{-k}; the remainder is about S(m) m / (k - 1).
  real so = outer.value(), si = inner.value();
  if (m >= 2 && si > 0 && so > 0 && so < si) {
    real k = std::log(si / so) / std::log(static_cast<real>(m) / static_cast<real>(m - 1));
    r.tail_estimate = k > 1 ? so * static_cast<real>(m) / (k - 1) : std::numeric_limits<real>::infinity();
  } else {
    r.tail_estimate = std::numeric_limits<real>::infinity();
  }
  return r;
}

cplx lipschitz_prefactor(const TripleS& e) {
  cplx x = e.weight();
  cplx num = std::exp(x * std::log(cplx(0, -2 * kPi))) * std::exp(-x * kPi * kI / 2.0);
  cplx den = complex_gamma(e.s + e.w + e.u - 1.0) * complex_gamma(e.w + e.u - 0.5) * complex_gamma(e.u);
  return -num / (std::pow(kPi, real(1.5)) * den);
}

RhsResult lipschitz_rhs(const TripleS& e, const SymC3& z, long long trace_bound) {
  RhsResult r;
  if (trace_bound < 3) return r;
  TripleS f{-e.w, -e.s, e.s + e.w + e.u - 2.0};
  cplx pre = lipschitz_prefactor(e);
  KahanSum<cplx> acc;
  for (const auto& t : enumerate_J(trace_bound)) {
    PosDefForm y = t.to_real();
    SymC3 it{kI * y.y1, kI * y.y2, kI * y.y3, kI * y.y4, kI * y.y5, kI * y.y6};
    SymC3 iwtw = reverse_entries(it);
    cplx tr = real(t.t1) * z.tau1 + real(t.t2) * z.tau2 + real(t.t3) * z.tau3 + real(t.b12) * z.z1 +
              real(t.b13) * z.z2 + real(t.b23) * z.z3;
    acc.add(power_p(f, iwtw) * std::exp(2 * kPi * kI * tr));
    ++r.terms;
  }
  r.value_literal = pre * acc.value();
  r.value = kHalfIntegralCovolume * r.value_literal;
  return r;
}

LipschitzReport lipschitz_report(const TripleS& e, const SymC3& z, int max_abs, long long trace_bound,
                                 unsigned threads) {
  if (!is_siegel_point(z)) throw DomainError("lipschitz: Z must be a Siegel point");
  LhsResult l = lipschitz_lhs(e, z, max_abs, threads);
  RhsResult r = lipschitz_rhs(e, z, trace_bound);
  LipschitzReport rep;
  rep.lhs = l.value;
  rep.rhs = r.value;
  rep.relative_gap = relative_gap(l.value, r.value);
  rep.rhs_literal = r.value_literal;
  rep.literal_gap = relative_gap(l.value, r.value_literal);
  rep.lhs_terms = l.terms;
  rep.rhs_terms = r.terms;
  rep.max_abs = max_abs;
  rep.trace_bound = trace_bound;
  rep.lhs_tail_estimate = l.tail_estimate;
  return rep;
}

ClassicalLipschitzReport classical_lipschitz(cplx tau, cplx s, long long n_bound) {
  if (tau.imag() <= 0) throw DomainError("classical_lipschitz needs Im tau > 0");
  if (s.real() <= 1) throw DomainError("classical_lipschitz needs Re s > 1");
  auto pw = [&](cplx x) { return std::exp(-s * std::log(x)); };
  KahanSum<cplx> lhs;
  for (long long n = -n_bound; n <= n_bound; ++n) lhs.add(pw(tau + real(n)));
  // Midpoint tails: sum_{n > N} ~ integral from N + 1/2, both directions.
  real edge = static_cast<real>(n_bound) + 0.5;
  lhs.add(std::exp((1.0 - s) * std::log(tau + edge)) / (s - 1.0));
  lhs.add(-std::exp((1.0 - s) * std::log(tau - edge)) / (s - 1.0));

  KahanSum<cplx> rhs;
  for (long long n = 1; n <= n_bound; ++n) {
    cplx term = std::exp((s - 1.0) * std::log(static_cast<real>(n)) + 2 * kPi * kI * real(n) * tau);
    rhs.add(term);
    if (std::abs(term) < 1e-300) break;
  }
  ClassicalLipschitzReport r;
  r.lhs = lhs.value();
  r.rhs = std::exp(s * std::log(cplx(0, -2 * kPi))) / complex_gamma(s) * rhs.value();
  r.relative_gap = relative_gap(r.lhs, r.rhs);
  if (s == cplx(2)) {
    r.has_closed_form = true;
    cplx sn = std::sin(kPi * tau);
    r.closed_form = kPi * kPi / (sn * sn);
    r.rhs_closed_gap = relative_gap(r.rhs, r.closed_form);
  }
  return r;
}

}  // namespace s3
