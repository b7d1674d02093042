#include "siegel3/special.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <vector>

namespace s3 {

// ---- quadrature -----------------------------------------------------------

namespace {

constexpr std::array<real, 8> kXgk = {
    0.991455371120812639206854697526329L, 0.949107912342758524526189684047851L,
    0.864864423359769072789712788640926L, 0.741531185599394439863864773280788L,
    0.586087235467691130294144845693013L, 0.405845151377397166906606412076961L,
    0.207784955007898467600689403773245L, 0.0L};
constexpr std::array<real, 8> kWgk = {
    0.022935322010529224963732008058970L, 0.063092092629978553290700663189204L,
    0.104790010322250183839876322541518L, 0.140653259715525918745189590510238L,
    0.169004726639267902826583426598550L, 0.190350578064785409913256402421014L,
    0.204432940075298892414161999234649L, 0.209482141084727828012999174891714L};
constexpr std::array<real, 4> kWg = {
    0.129484966168869693270611432679082L, 0.279705391489276667901467771423780L,
    0.381830050505118944950369775488975L, 0.417959183673469387755102040816327L};

struct Panel {
  real a, b;
  cplx value;
  real error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gk15(const std::function<cplx(real)>& f, real a, real b) {
  real c = (a + b) / 2, h = (b - a) / 2;
  cplx fc = f(c);
  cplx k = fc * kWgk[7];
  cplx g = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    real dx = h * kXgk[j];
    cplx f1 = f(c - dx), f2 = f(c + dx);
    k += (f1 + f2) * kWgk[j];
    if (j % 2 == 1) g += (f1 + f2) * kWg[j / 2];
  }
  k *= h;
  g *= h;
  return {a, b, k, std::abs(k - g)};
}

}  // namespace

QuadResult integrate_gk(const std::function<cplx(real)>& f, real a, real b, const QuadConfig& cfg) {
  std::priority_queue<Panel> heap;
  Panel first = gk15(f, a, b);
  heap.push(first);
  cplx total = first.value;
  real err = first.error;
  int panels = 1;
  while (err > std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total))) {
    if (panels >= cfg.max_panels) throw QuadratureFailure("adaptive quadrature exhausted its panel budget");
    Panel p = heap.top();
    heap.pop();
    real mid = (p.a + p.b) / 2;
    Panel l = gk15(f, p.a, mid), r = gk15(f, mid, p.b);
    total += l.value + r.value - p.value;
    err += l.error + r.error - p.error;
    heap.push(l);
    heap.push(r);
    ++panels;
    if (!std::isfinite(std::abs(total))) throw QuadratureFailure("non-finite integrand");
  }
  // Re-sum the panels so the returned value does not carry update drift.
  KahanSum<cplx> acc;
  real e = 0;
  while (!heap.empty()) {
    acc.add(heap.top().value);
    e += heap.top().error;
    heap.pop();
  }
  return {acc.value(), e, panels};
}

// ---- Gamma ------------------------------------------------------------------

namespace {

// Lanczos coefficients for g = 607/128, 15 terms.
constexpr real kLanczosG = 607.0L / 128.0L;
constexpr std::array<real, 15> kLanczos = {
    0.99999999999999709182L,     57.156235665862923517L,     -59.597960355475491248L,
    14.136097974741747174L,      -0.49191381609762019978L,   .33994649984811888699e-4L,
    .46523628927048575665e-4L,   -.98374475304879564677e-4L, .15808870322491248884e-3L,
    -.21026444172410488319e-3L,  .21743961811521264320e-3L,  -.16431810653676389022e-3L,
    .84418223983852743293e-4L,   -.26190838401581408670e-4L, .36899182659531622704e-5L};

bool near_nonpositive_integer(cplx z) {
  if (z.real() > 0.5) return false;
  real n = std::round(z.real());
  return std::abs(z - cplx(n, 0)) < 1e-12;
}

}  // namespace

cplx log_gamma(cplx z) {
  cplx x = z - real(1);
  cplx a = kLanczos[0];
  for (int k = 1; k < 15; ++k) a += kLanczos[k] / (x + real(k));
  cplx t = x + kLanczosG + real(0.5);
  return real(0.5) * std::log(2 * kPi) + (x + real(0.5)) * std::log(t) - t + std::log(a);
}

cplx complex_gamma(cplx z) {
  if (near_nonpositive_integer(z)) throw Pole("Gamma pole at a non-positive integer");
  if (z.real() < 0.5) return kPi / (std::sin(kPi * z) * std::exp(log_gamma(real(1) - z)));
  return std::exp(log_gamma(z));
}

// ---- zeta -------------------------------------------------------------------

namespace {

// B_{2k}/(2k)! = (-1)^{k+1} 2 zeta(2k) / (2 pi)^{2k}, k = 1..kEmTerms.
constexpr int kEmTerms = 60;

const std::array<real, kEmTerms + 1>& em_coefficients() {
  static const std::array<real, kEmTerms + 1> c = [] {
    std::array<real, kEmTerms + 1> r{};
    for (int k = 1; k <= kEmTerms; ++k) {
      real z2k = 0;
      if (k == 1) {
        z2k = kPi * kPi / 6;
      } else {
        for (int n = 200; n >= 1; --n) z2k += std::pow(static_cast<real>(n), -2.0L * k);
      }
      real v = 2 * z2k / std::pow(2 * kPi, 2.0L * k);
      r[k] = (k % 2 == 1) ? v : -v;
    }
    return r;
  }();
  return c;
}

cplx zeta_em(cplx s) {
  const auto& c = em_coefficients();
  int n_terms = 30 + static_cast<int>(std::ceil(std::abs(s.imag())));
  real nr = static_cast<real>(n_terms);
  KahanSum<cplx> head;
  for (int n = n_terms - 1; n >= 1; --n) head.add(std::exp(-s * std::log(static_cast<real>(n))));
  cplx n_pow = std::exp(-s * std::log(nr));  // N^{-s}
  cplx sum = head.value() + n_pow * nr / (s - real(1)) + n_pow / real(2);
  cplx rising = s;        // s (s+1) ... (s+2k-2)
  cplx npow = n_pow / nr; // N^{-s-2k+1}
  real prev = INFINITY;
  for (int k = 1; k <= kEmTerms; ++k) {
    cplx term = c[k] * rising * npow;
    real mag = std::abs(term);
    sum += term;
    if (mag < 1e-18 * std::abs(sum) || mag > prev) break;
    prev = mag;
    rising *= (s + real(2 * k - 1)) * (s + real(2 * k));
    npow /= nr * nr;
  }
  return sum;
}

}  // namespace

cplx complex_zeta(cplx s) {
  if (std::abs(s - real(1)) < 1e-12) throw Pole("zeta pole at s = 1");
  if (s.real() < 0) {
    // zeta(s) = 2^s pi^{s-1} sin(pi s / 2) Gamma(1-s) zeta(1-s)
    cplx one_minus = real(1) - s;
    return std::exp(s * std::log(real(2)) + (s - real(1)) * std::log(kPi)) * std::sin(kPi * s / real(2)) *
           complex_gamma(one_minus) * zeta_em(one_minus);
  }
  return zeta_em(s);
}

cplx xi2(cplx s) {
  if (std::abs(s) < 1e-12 || std::abs(s - real(0.5)) < 1e-12) throw Pole("xi(2s) pole at s in {0, 1/2}");
  return std::exp(-s * std::log(kPi)) * complex_gamma(s) * complex_zeta(real(2) * s);
}

cplx phi(cplx s) {
  const cplx h = real(0.5);
  return s * (real(1) - s) * (s - h) * (h - s);
}

// ---- Bessel K -----------------------------------------------------------------

cplx besselK(cplx nu, real x) {
  if (!(x > 0)) throw DomainError("besselK requires x > 0");
  // K_nu(x) = e^{-x} int_0^inf exp(-x (cosh t - 1)) cosh(nu t) dt
  real a = std::abs(nu.real());
  auto g = [&](real t) { return a * t - x * (std::cosh(t) - 1); };
  real t_peak = std::asinh(a / x);
  real g_peak = g(t_peak);
  real t_hi = t_peak + 1;
  while (g(t_hi) > g_peak - 50) t_hi += 1;
  auto f = [&](real t) { return std::exp(-x * (std::cosh(t) - 1)) * std::cosh(nu * t); };
  QuadConfig cfg;
  cfg.rel_tol = 1e-14;
  cfg.abs_tol = 1e-30 * std::exp(g_peak);
  cplx v = 0;
  if (t_peak > 0) v += integrate_gk(f, 0, t_peak, cfg).value;
  v += integrate_gk(f, t_peak, t_hi, cfg).value;
  return v * std::exp(-x);
}

// ---- Gamma_3 and the matrix integral quadrature ---------------------------------

cplx gamma3(const TripleS& e) {
  cplx phase = std::exp(e.weight() * kPi * kI / real(2));
  return std::pow(kPi, real(1.5)) * phase * complex_gamma(e.s + e.w + e.u) *
         complex_gamma(e.w + e.u - real(0.5)) * complex_gamma(e.u - real(1));
}

cplx gaussian_integral(cplx beta, cplx gamma) {
  if (!(beta.real() > 0)) throw DomainError("Gaussian integral needs Re(beta) > 0");
  return std::sqrt(kPi / beta) * std::exp(gamma * gamma / (real(4) * beta));
}

cplx gaussian_moment(cplx a, cplx q, const std::function<cplx(real)>& amp, const QuadConfig& cfg) {
  // Substitute t = e^x: the integrand e^{(a+1)x} amp(e^x) decays exponentially
  // at -inf (Re a > -1) and like a Gaussian in t at +inf.
  real p = a.real() + 1;
  if (!(p > 0)) throw PreconditionViolation("moment integral diverges at 0");
  real c = 2 * kPi * q.imag();
  if (!(c > 0)) throw PreconditionViolation("moment integral needs Im q > 0");
  auto env = [&](real x) { return p * x - c * std::exp(2 * x); };
  real x_peak = real(0.5) * std::log(p / (2 * c));
  real g_peak = env(x_peak);
  const real drop = 48;
  real lo = x_peak - 1, hi = x_peak + 1;
  while (env(lo) > g_peak - drop) lo -= 1;
  while (env(hi) > g_peak - drop) hi += 0.25;
  auto f = [&](real x) {
    real t = std::exp(x);
    return std::exp((a + real(1)) * x) * amp(t);
  };
  // Split at the peak so each panel sees a monotone envelope.
  QuadConfig local = cfg;
  local.abs_tol = std::max(cfg.abs_tol, std::exp(g_peak) * real(1e-17));
  return integrate_gk(f, lo, x_peak, local).value + integrate_gk(f, x_peak, hi, local).value;
}

LemmaIntReport lemma_int(const TripleS& e, const SymC3& z, const QuadConfig& cfg) {
  if (!((e.s + e.w + e.u).real() > 0 && (e.w + e.u).real() > 0.5 && e.u.real() > 1))
    throw PreconditionViolation("matrix integral needs Re(s+w+u)>0, Re(w+u)>1/2, Re(u)>1");
  if (!is_siegel_point(z)) throw PreconditionViolation("Z is not a Siegel point");
  const cplx tpi = real(2) * kPi * kI;  // 2 pi i
  const cplx t1 = z.tau1, t2 = z.tau2, t3 = z.tau3, z1 = z.z1, z2 = z.z2, z3 = z.z3;

  // L1: int t^{2u-3} e(tau3 t^2)
  LemmaIntReport r{};
  r.L1 = gaussian_moment(real(2) * e.u - real(3), t3, [&](real t) { return std::exp(tpi * t3 * t * t); }, cfg);

  // L2: int t^{2(w+u)-2} e(tau2 t^2) [int e(tau3 x^2 + 2 z3 t x) dx] dt
  const cplx beta6 = -tpi * t3;
  const cplx q2 = t2 - z3 * z3 / t3;
  r.L2 = gaussian_moment(
      real(2) * (e.w + e.u) - real(2), q2,
      [&](real t) { return std::exp(tpi * t2 * t * t) * gaussian_integral(beta6, real(2) * tpi * z3 * t); }, cfg);

  // L3: int t^{2(s+w+u)-1} e(tau1 t^2) [int int e(tau2 x^2 + 2 z1 t x + tau3 y^2 + 2 (z2 t + z3 x) y) dy dx] dt
  // The y-Gaussian has beta5 = -2 pi i tau3, gamma5 = 4 pi i (z2 t + z3 x); expanding
  // gamma5^2/(4 beta5) leaves an x-Gaussian with the coefficients below.
  const cplx beta5 = -tpi * t3;
  const cplx beta4 = -tpi * (t2 - z3 * z3 / t3);
  const cplx q3 = z.det() / (t2 * t3 - z3 * z3);
  r.L3 = gaussian_moment(
      real(2) * (e.s + e.w + e.u) - real(1), q3,
      [&](real t) {
        cplx gamma4 = real(2) * tpi * (z1 - z2 * z3 / t3) * t;
        cplx rest = -tpi * z2 * z2 * t * t / t3;  // x-independent part of gamma5^2/(4 beta5)
        return std::exp(tpi * t1 * t * t + rest) * gaussian_integral(beta5, 0) * gaussian_integral(beta4, gamma4);
      },
      cfg);

  r.lhs = real(8) * std::exp(e.weight() * kPi * kI / real(2)) * r.L1 * r.L2 * r.L3;
  cplx log_2pi_i = std::log(tpi);
  r.rhs = std::exp(-e.weight() * log_2pi_i + power_log(e, branch_h_inverse(z))) * gamma3(e);
  r.gap = std::abs(r.lhs - r.rhs) / std::abs(r.rhs);
  return r;
}

real lemma_int_gap(const TripleS& e, const SymC3& z, const QuadConfig& cfg) { return lemma_int(e, z, cfg).gap; }

}  // namespace s3
