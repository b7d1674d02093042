#include "suite.hpp"

#include <array>
#include <chrono>
#include <cstdio>
#include <random>
#include <sys/wait.h>

#include "helpers.hpp"
#include "siegel3/eisenstein.hpp"
#include "siegel3/fe_group.hpp"
#include "siegel3/km.hpp"
#include "siegel3/lipschitz.hpp"
#include "siegel3/special.hpp"
#include "siegel3/symplectic.hpp"

namespace s3::suite {

using namespace s3::testing;

json cplx_json(cplx z) { return {{"re", static_cast<double>(z.real())}, {"im", static_cast<double>(z.imag())}}; }

namespace {

std::mt19937_64 rng_for(std::uint64_t seed, int id) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(id)};
  return std::mt19937_64(seq);
}

json form_json(const HalfIntegralForm& t) { return {t.t1, t.t2, t.t3, t.b12, t.b13, t.b23}; }

const IMat3 kId = identity3<long long>();
const IMat3 kZero{};

// Im Z = I3 and the three fixed rational real parts.
std::array<SymC3, 3> lipschitz_points() {
  auto z = [](real x11, real x22, real x33, real x12, real x13, real x23) {
    return SymC3{x11 + kI, x22 + kI, x33 + kI, cplx(x12), cplx(x13), cplx(x23)};
  };
  return {z(0, 0, 0, 0, 0, 0), z(0.25, -1.0 / 3, 0, 0.125, 0, 1.0 / 6),
          z(-0.5, 1.0 / 7, -1.0 / 6, 0.2, -0.25, 1.0 / 3)};
}

Criterion c1_claim1(const Options& opt) {
  Criterion c{1, "Inversion identity for the power function"};
  c.runtime_limit = 10;
  auto rng = rng_for(opt.seed, 1);
  real worst = 0;
  for (int n = 0; n < 1000; ++n) {
    TripleS e{random_cplx(rng, 3), random_cplx(rng, 3), random_cplx(rng, 3)};
    worst = std::max(worst, claim1_gap(e, random_siegel(rng, 0.5, 2.0)));
  }
  c.detail = {{"samples", 1000}, {"max_gap", worst}, {"tol", 1e-10}};
  c.pass = worst <= 1e-10;
  return c;
}

Criterion c2_lemma_int(const Options& opt) {
  Criterion c{2, "Matrix integral by the factorized quadrature"};
  c.runtime_limit = 60;
  auto rng = rng_for(opt.seed, 2);
  std::vector<SymC3> zs;
  for (int n = 0; n < 10; ++n) zs.push_back(random_siegel(rng, 1.0, 0.5, 0.5));  // Im Z = I + A A^T / 2
  json per = json::array();
  real worst = 0;
  for (TripleS e : {TripleS{1.5, 1, 2}, TripleS{2, 1.5, 3}}) {
    real w = 0;
    for (const auto& z : zs) w = std::max(w, lemma_int_gap(e, z));
    per.push_back({{"s", static_cast<double>(e.s.real())}, {"w", static_cast<double>(e.w.real())},
                   {"u", static_cast<double>(e.u.real())}, {"max_gap", w}});
    worst = std::max(worst, w);
  }
  c.detail = {{"points", zs.size()}, {"exponents", per}, {"tol", 1e-8}};
  c.pass = worst <= 1e-8;
  return c;
}

Criterion c3_lipschitz(const Options& opt) {
  Criterion c{3, "Lipschitz identity, two-sided, at (max_abs, trace_bound) = (8, 12)"};
  c.runtime_limit = 120;
  TripleS e{2, 4, 5};
  json pts = json::array();
  bool within = true, decreasing = true;
  for (const auto& z : lipschitz_points()) {
    LipschitzReport a = lipschitz_report(e, z, 8, 12, opt.threads), b = lipschitz_report(e, z, 9, 13, opt.threads);
    within = within && a.relative_gap <= 1e-3;
    decreasing = decreasing && b.relative_gap < a.relative_gap;
    pts.push_back({{"gap_8_12", a.relative_gap}, {"gap_9_13", b.relative_gap}, {"lhs", cplx_json(a.lhs)},
                   {"rhs", cplx_json(a.rhs)}});
  }
  c.detail = {{"points", pts}, {"tol", 1e-3}, {"all_within_tol", within}, {"strictly_decreasing", decreasing}};
  c.pass = within && decreasing;
  return c;
}

Criterion c4_classical(const Options&) {
  Criterion c{4, "Classical Lipschitz formula at s = 2"};
  c.runtime_limit = 1;
  json pts = json::array();
  bool ok = true;
  for (cplx tau : {cplx(0, 1), cplx(0.5, 1)}) {
    ClassicalLipschitzReport r = classical_lipschitz(tau, 2.0, 50);
    ok = ok && r.has_closed_form && r.rhs_closed_gap <= 1e-12;
    pts.push_back({{"tau", cplx_json(tau)}, {"rhs_vs_closed_form", r.rhs_closed_gap}});
  }
  c.detail = {{"points", pts}, {"tol", 1e-12}};
  c.pass = ok;
  return c;
}

Criterion c5_gamma3(const Options& opt) {
  Criterion c{5, "Matrix gamma closed form and reflection identity"};
  real g = rel_err(gamma3({0, 0, 2}), -kPi * kPi / 2.0);
  auto rng = rng_for(opt.seed, 5);
  real worst = 0;
  for (int n = 0; n < 100; ++n) {
    cplx s = random_cplx(rng, 2), w = random_cplx(rng, 2), u = random_cplx(rng, 2);
    worst = std::max(worst, rel_err(gamma3({-w, -s, s + w + u}), gamma3({w - 1.0, 0.5 - s - w, s + w + u})));
  }
  c.detail = {{"gamma3_002_rel_err", g}, {"identity_max_rel_err", worst}};
  c.pass = g <= 1e-13 && worst <= 1e-12;
  return c;
}

Criterion c6_reduction(const Options& opt) {
  Criterion c{6, "Reduction, automorphism counts, class list at det <= 1"};
  c.runtime_limit = 30;
  auto sl3 = small_unimodular(1, true);
  long long e_i3 = brute_eps(HalfIntegralForm::identity(), sl3), e_112 = brute_eps(HalfIntegralForm::diag(1, 1, 2), sl3);
  bool eps_ok = e_i3 == 24 && e_112 == 8 && automorphism_count(HalfIntegralForm::identity()) == 24 &&
                automorphism_count(HalfIntegralForm::diag(1, 1, 2)) == 8;

  auto rng = rng_for(opt.seed, 6);
  const HalfIntegralForm d123 = HalfIntegralForm::diag(1, 2, 3);
  int round_trip = 0;
  for (int n = 0; n < 500; ++n) {
    HalfIntegralForm scrambled = congruence(d123, random_unimodular(rng, 3));
    ReducedForm r = minkowski_reduce(scrambled);
    if (r.form == d123 && congruence(scrambled, r.U) == r.form) ++round_trip;
  }

  auto one = reduced_classes(rational(1));
  json classes = json::array();
  for (const auto& k : one)
    classes.push_back({{"form", form_json(k.rep.form)},
                       {"det", std::to_string(k.det.numerator()) + "/" + std::to_string(k.det.denominator())},
                       {"eps", k.eps}});
  bool only_i3 = one.size() == 1 && one[0].rep.form == HalfIntegralForm::identity();
  c.detail = {{"eps_I3_brute", e_i3},          {"eps_diag112_brute", e_112},
              {"eps_ok", eps_ok},              {"round_trip_ok", round_trip},
              {"round_trip_total", 500},       {"classes_det_le_1", classes},
              {"classes_equal_I3_only", only_i3}};
  c.pass = eps_ok && round_trip == 500 && only_i3;
  return c;
}

Criterion c7_selberg(const Options& opt) {
  Criterion c{7, "Selberg Eisenstein series: flags against cosets, GL3 invariance"};
  c.runtime_limit = 60;
  auto rng = rng_for(opt.seed, 7);
  TripleS e{2, 2, 0};
  TruncationSpec t{20, 20};
  json pts = json::array();
  bool ok = true;
  for (const PosDefForm& y : {PosDefForm::identity(), random_posdef(rng, 0.8)}) {
    SeriesResult f = selberg_E(y, e, t, opt.threads), k = selberg_E_cosets(y, e, t);
    real gap = rel_err(f.value, k.value);
    ok = ok && f.terms == k.terms && gap <= 1e-12;
    real inv = 0;
    bool terms_match = true;
    for (int n = 0; n < 5; ++n) {
      SeriesResult r = selberg_E(congruence(y, random_unimodular(rng, 2)), e, t, opt.threads);
      terms_match = terms_match && r.terms == f.terms;
      inv = std::max(inv, rel_err(r.value, f.value));
    }
    ok = ok && terms_match && inv <= 1e-11;
    pts.push_back({{"terms", f.terms}, {"coset_terms", k.terms}, {"flags_vs_cosets", gap},
                   {"gl3_terms_match", terms_match}, {"gl3_max_rel_err", inv}});
  }
  c.detail = {{"points", pts}, {"tol", 1e-12}, {"gl3_tol", 1e-11}};
  c.pass = ok;
  return c;
}

Criterion c8_epstein(const Options&) {
  Criterion c{8, "Epstein zeta and the real-analytic Eisenstein bridge"};
  SeriesResult z = epstein(PosDefForm::identity(), 2, 2.0, 250000);
  real exact = 2 * (kPi * kPi / 6) * kCatalan;
  real err = std::abs(z.value - exact);
  bool ok = err <= z.tail && z.tail <= 1e-4;
  json pts = json::array();
  for (real s : {2.0, 3.0}) {
    real beta = s == 2 ? kCatalan : kPi * kPi * kPi / 32;
    real ex = 2 * complex_zeta(s).real() * beta;
    real z2s = complex_zeta(2 * s).real();
    real coprime = std::abs(z2s * coprime_E(kI, s, 4e6) - ex);
    real bridge = std::abs(z2s * real_analytic_E(kI, s, 1e4).value - epstein(PosDefForm::identity(), 2, s, 1e4).value);
    ok = ok && coprime <= 1e-8 && bridge <= 1e-8;
    pts.push_back({{"s", s}, {"coprime_sum_vs_closed_form", coprime}, {"w_tau_bridge", bridge}});
  }
  c.detail = {{"epstein_error", err}, {"epstein_tail", z.tail}, {"tail_tol", 1e-4}, {"points", pts}, {"tol", 1e-8}};
  c.pass = ok;
  return c;
}

Criterion c9_zeta_star(const Options&) {
  Criterion c{9, "zeta* of Z^2: Bessel expansion against direct sums, decay in t"};
  json pts = json::array();
  bool ok = true;
  for (auto [s, tau] : {std::pair<cplx, cplx>{2.3, {0.3, 1.7}}, {3.0, kI}}) {
    ZetaStarReport r = zeta_Z2_star_report(s, tau);
    real gap = r.residual / std::abs(r.bessel);
    ok = ok && gap <= 1e-8;
    pts.push_back({{"s", cplx_json(s)}, {"tau", cplx_json(tau)}, {"relative_gap", gap}, {"value", cplx_json(r.bessel)}});
  }
  cplx a = zeta_Z2_star(2.3, {0, 5}), b = zeta_Z2_star(2.3, {0, 10});
  real predicted = std::pow(2.0, 0.5 - 2.3) * std::abs(besselK(1.8, 20 * kPi) / besselK(1.8, 10 * kPi));
  real ratio = std::abs(b / a), dev = std::abs(ratio / predicted - 1);
  ok = ok && dev < 1e-6 && ratio < std::exp(-2 * kPi * 5) * 10;
  c.detail = {{"points", pts}, {"ratio_t10_t5", ratio}, {"predicted_ratio", predicted}, {"ratio_rel_dev", dev}};
  c.pass = ok;
  return c;
}

Criterion c10_fe_group(const Options&) {
  Criterion c{10, "Functional-equation group is dihedral of order 12"};
  c.runtime_limit = 1;
  GroupTable g = closure({generator("w"), generator("a"), generator("aba")});
  AffineMapQk aw = compose(generator("a"), generator("w"));
  int i = g.index_of(aw);
  int ord = i >= 0 ? g.order(i) : -1;
  bool conj = i >= 0 && compose(generator("b"), compose(aw, generator("b"))).same_map(g.elements[static_cast<std::size_t>(g.inverse(i))]);
  DihedralCertificate cert = certify_dihedral(g);
  c.detail = {{"order", g.elements.size()}, {"order_aw", ord}, {"b_aw_b_is_inverse", conj}, {"dihedral", cert.ok}};
  c.pass = g.elements.size() == 12 && ord == 6 && conj && cert.ok;
  return c;
}

Criterion c11_km(const Options& opt) {
  Criterion c{11, "Koecher-Maass series plumbing"};
  CoefficientTable ones = ones_provider(24);
  TripleS e{2, 2.5, 14};
  TruncationSpec tr{30, 30};
  SeriesValue tw = km_twisted(ones, e, 1, tr, opt.threads);
  cplx expect_tw = selberg_E(PosDefForm::identity(), e, tr, opt.threads).value / 24.0;
  real tw_gap = rel_err(tw.value, expect_tw);
  cplx s(15, 0.5);
  SeriesValue cl = km_classic(ones, s, 1);
  real cl_gap = rel_err(cl.value, 1.0 / 24.0);

  // Brute-force classes and automorphism counts up to det 10.
  CoefficientTable table = det_power_provider(24, cplx(0.3, -0.2));
  cplx s2(16, 1);
  KahanSum<cplx> brute;
  auto reps = brute_class_reps(10);
  for (const auto& t : reps)
    brute.add(coefficient(table, t) /
              (static_cast<real>(brute_eps_box(t)) * std::exp(s2 * std::log(t.to_real().det()))));
  SeriesValue v = km_classic(table, s2, 10);
  real brute_gap = rel_err(v.value, brute.value());
  bool brute_ok = v.classes_used == reps.size() && brute_gap <= 1e-12;

  CoefficientTable f = det_power_provider(24, 0.5), h = linear_combination(cplx(2, -1), f, cplx(0.25, 3), ones);
  real lin = rel_err(km_classic(h, s, 6).value,
                     cplx(2, -1) * km_classic(f, s, 6).value + cplx(0.25, 3) * km_classic(ones, s, 6).value);

  c.detail = {{"det1_classes_used", cl.classes_used},
              {"twisted_vs_E_I3_over_24", tw_gap},
              {"classic_vs_1_over_24", cl_gap},
              {"brute_classes", reps.size()},
              {"brute_force_rel_err", brute_gap},
              {"linearity_rel_err", lin}};
  c.pass = tw_gap <= 1e-12 && cl_gap <= 1e-12 && brute_ok && lin <= 1e-14;
  return c;
}

Criterion c12_symplectic(const Options& opt) {
  Criterion c{12, "Symplectic completion and canonical coprime pairs"};
  auto rng = rng_for(opt.seed, 12);
  int completed = 0;
  for (int n = 0; n < 500; ++n) {
    auto [cc, dd] = random_pair(rng, 3);
    SymplecticMat g = complete_to_symplectic({cc, dd});
    if (is_symplectic(g) && g.C() == cc && g.D() == dd) ++completed;
  }
  int constant = 0, witnessed = 0;
  for (int n = 0; n < 50; ++n) {
    auto [cc, dd] = random_pair(rng, 2);
    IMatN p = pair_block(cc, dd), q = left_mul(random_unimodular(rng, 2), p);
    if (brute_left_associated(p, q, 2)) ++witnessed;
    CoprimePair cq = from_block(q);
    if (canonical_pair(cq.C, cq.D) == canonical_pair(cc, dd)) ++constant;
  }
  c.detail = {{"completed", completed}, {"completion_total", 500}, {"orbit_pairs", 50},
              {"brute_force_witnessed", witnessed}, {"canonical_constant", constant}};
  c.pass = completed == 500 && witnessed == 50 && constant == 50;
  return c;
}

Criterion c13_kernel(const Options& opt) {
  Criterion c{13, "Per-coset slashed Lipschitz comparison"};
  TripleS e{2, 4, 5};
  SymC3 z{1.1 * kI, kI, 0.95 * kI, 0.1 * kI, 0, -0.05 * kI};
  IMat3 c1{}, d1 = kId;
  c1[0][0] = 1;
  d1[0][0] = 0;
  json pts = json::array();
  bool ok = true;
  for (const CoprimePair& p : {CoprimePair{kZero, kId}, CoprimePair{kId, kZero}, CoprimePair{c1, d1}}) {
    CosetLipschitz r = coset_lipschitz(24, e, p, z, 10, 14, opt.threads);
    ok = ok && r.relative_gap <= 1e-3;
    pts.push_back({{"C", p.C}, {"D", p.D}, {"relative_gap", r.relative_gap}, {"j", cplx_json(r.j)}});
  }
  c.detail = {{"pairs", pts}, {"max_abs", 10}, {"trace_bound", 14}, {"tol", 1e-3}};
  c.pass = ok;
  return c;
}

std::string capture(const std::string& cmd, int& status) {
  std::string out;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) {
    status = -1;
    return out;
  }
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  int raw = pclose(p);
  status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return out;
}

Criterion c14_determinism(const Options& opt) {
  Criterion c{14, "selftest output is identical for 1 and 8 threads"};
  std::string base = opt.cli_path + " selftest --seed " + std::to_string(opt.seed) + " --threads ";
  int s1 = 0, s8 = 0;
  std::string a = capture(base + "1 2>/dev/null", s1), b = capture(base + "8 2>/dev/null", s8);
  c.detail = {{"bytes", a.size()}, {"identical", a == b}, {"exit_1", s1}, {"exit_8", s8}};
  c.pass = !a.empty() && a == b && s1 == s8;
  return c;
}

}  // namespace

std::vector<Criterion> run(const Options& opt, const Reporter& report) {
  using Fn = Criterion (*)(const Options&);
  const std::vector<std::pair<int, Fn>> all = {
      {1, c1_claim1},   {2, c2_lemma_int},   {3, c3_lipschitz}, {4, c4_classical}, {5, c5_gamma3},
      {6, c6_reduction}, {7, c7_selberg},    {8, c8_epstein},   {9, c9_zeta_star}, {10, c10_fe_group},
      {11, c11_km},     {12, c12_symplectic}, {13, c13_kernel}, {14, c14_determinism}};
  std::vector<Criterion> out;
  for (const auto& [id, fn] : all) {
    if (!opt.only.empty() && !opt.only.count(id)) continue;
    if (id == 14 && opt.cli_path.empty()) continue;
    auto t0 = std::chrono::steady_clock::now();
    Criterion c;
    try {
      c = fn(opt);
    } catch (const std::exception& ex) {
      c.id = id;
      c.title = "criterion " + std::to_string(id);
      c.pass = false;
      c.detail = {{"error", ex.what()}};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (report) report(c, secs);
    out.push_back(std::move(c));
  }
  return out;
}

json to_json(const std::vector<Criterion>& results, std::uint64_t seed) {
  json list = json::array();
  int passed = 0;
  for (const auto& c : results) {
    list.push_back({{"id", c.id}, {"title", c.title}, {"pass", c.pass}, {"detail", c.detail}});
    passed += c.pass ? 1 : 0;
  }
  return {{"seed", seed}, {"criteria", list}, {"passed", passed}, {"total", results.size()}};
}

}  // namespace s3::suite
