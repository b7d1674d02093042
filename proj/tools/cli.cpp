#include <charconv>
#include <cstdio>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "helpers.hpp"
#include "siegel3/eisenstein.hpp"
#include "siegel3/fe_group.hpp"
#include "siegel3/km.hpp"
#include "siegel3/lipschitz.hpp"
#include "siegel3/special.hpp"
#include "siegel3/symplectic.hpp"
#include "suite.hpp"

using namespace s3;
using s3::suite::cplx_json;
using s3::suite::json;

namespace {

constexpr int kOk = 0, kUsage = 1, kVerifyFailed = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<real> parse_reals(const std::string& text, std::size_t expect_min, std::size_t expect_max,
                              const std::string& what) {
  std::vector<real> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string::npos) end = text.size();
    std::string tok = text.substr(pos, end - pos);
    double v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc() || p != tok.data() + tok.size())
      throw UsageError(what + ": cannot parse '" + tok + "'");
    out.push_back(static_cast<real>(v));
    pos = end + 1;
  }
  if (out.size() < expect_min || out.size() > expect_max) throw UsageError(what + ": wrong number of entries");
  return out;
}

cplx parse_cplx(const std::string& text, const std::string& what) {
  auto v = parse_reals(text, 1, 2, what);
  return {v[0], v.size() > 1 ? v[1] : 0};
}

IMat3 parse_imat(const std::string& text, const std::string& what) {
  auto v = parse_reals(text, 9, 9, what);
  IMat3 m{};
  for (std::size_t i = 0; i < 9; ++i) {
    if (v[i] != std::floor(v[i])) throw UsageError(what + ": entries must be integers");
    m[i / 3][i % 3] = static_cast<long long>(v[i]);
  }
  return m;
}

json form_json(const HalfIntegralForm& t) { return {t.t1, t.t2, t.t3, t.b12, t.b13, t.b23}; }
std::string rat_str(const rational& r) {
  return r.denominator() == 1 ? std::to_string(r.numerator())
                              : std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}
json sym6_json(const SymplecticMat& m) {
  json rows = json::array();
  for (const auto& r : m.m) rows.push_back(r);
  return rows;
}

// Flattens nested objects/arrays to "path,value" rows.
void flatten(const json& j, const std::string& path, std::ostream& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) flatten(it.value(), path.empty() ? it.key() : path + "." + it.key(), out);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", out);
  } else {
    out << path << ',' << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
  }
}

struct Common {
  std::string format = "json";
  unsigned threads = 1;
  double tol = -1;  // negative: subcommand default
  std::uint64_t seed = 42;
  int k = 24;
};

struct Inputs {
  std::string s = "2", w = "4", u = "5";
  std::string z_re = "0,0,0,0,0,0", z_im = "1,1,1,0,0,0";
  std::string y = "1,1,1,0,0,0";
  std::string form = "1,1,1,0,0,0";
  std::string tau = "0,1";
  std::string coeffs;
  std::string c = "0,0,0,0,0,0,0,0,0", d = "1,0,0,0,1,0,0,0,1";
  std::string det_bound = "1";
  double bound = 30;
  int max_abs = 1;
  long long trace_bound = 6;
  int dim = 3;
  long long samples = 0;
  std::vector<int> only;

  TripleS triple() const { return {parse_cplx(s, "--s"), parse_cplx(w, "--w"), parse_cplx(u, "--u")}; }
  SymC3 z() const {
    auto re = parse_reals(z_re, 6, 6, "--z-re"), im = parse_reals(z_im, 6, 6, "--z-im");
    return {cplx(re[0], im[0]), cplx(re[1], im[1]), cplx(re[2], im[2]),
            cplx(re[3], im[3]), cplx(re[4], im[4]), cplx(re[5], im[5])};
  }
  PosDefForm ymat() const {
    auto v = parse_reals(y, 6, 6, "--y");
    return {v[0], v[1], v[2], v[3], v[4], v[5]};
  }
  rational det() const {
    auto slash = det_bound.find('/');
    try {
      if (slash == std::string::npos) return rational(std::stoll(det_bound));
      return rational(std::stoll(det_bound.substr(0, slash)), std::stoll(det_bound.substr(slash + 1)));
    } catch (const std::exception&) {
      throw UsageError("--det-bound: expected an integer or p/q");
    }
  }
  CoefficientTable table(int k) const { return coeffs.empty() ? ones_provider(k) : load_coefficients(coeffs); }
};

struct Output {
  json body;
  int code = kOk;
};

real tol_or(const Common& c, real dflt) { return c.tol >= 0 ? static_cast<real>(c.tol) : dflt; }

json series_json(const SeriesResult& r) {
  return {{"value", cplx_json(r.value)}, {"terms", r.terms}, {"tail", r.tail}, {"outside_region", r.outside_region}};
}

json km_json(const SeriesValue& v) {
  return {{"value", cplx_json(v.value)}, {"classes_used", v.classes_used}, {"max_det", rat_str(v.max_det)},
          {"misses", v.misses}, {"outside_region", v.outside_region}, {"warnings", v.warnings},
          {"tail_estimate", v.tail_estimate}};
}

Output verdict(json body, real gap, real tol) {
  body["tol"] = tol;
  body["pass"] = gap <= tol;
  return {body, gap <= tol ? kOk : kVerifyFailed};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Siegel degree-3 evaluators and verification harnesses"};
  app.require_subcommand(1);
  Common com;
  Inputs in;

  // Flags shared by every subcommand.
  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", com.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--threads", com.threads, "worker threads (results do not depend on it)");
    sub->add_option("--tol", com.tol, "verification tolerance override");
    sub->add_option("--seed", com.seed, "RNG seed");
    sub->add_option("--k", com.k, "weight k");
    return sub;
  };
  auto exps = [&](CLI::App* sub) {
    sub->add_option("--s", in.s, "re[,im]");
    sub->add_option("--w", in.w, "re[,im]");
    sub->add_option("--u", in.u, "re[,im]");
  };
  auto zopt = [&](CLI::App* sub) {
    sub->add_option("--z-re", in.z_re, "Re Z as tau1,tau2,tau3,z12,z13,z23");
    sub->add_option("--z-im", in.z_im, "Im Z as tau1,tau2,tau3,z12,z13,z23");
  };

  std::map<std::string, std::function<Output()>> handlers;
  auto add = [&](const std::string& name, const std::string& desc) { return common(app.add_subcommand(name, desc)); };

  auto* sp = add("eval-power", "p_{s,w,u}(Z) and the branch values h1, h2, h3");
  exps(sp);
  zopt(sp);
  handlers["eval-power"] = [&] {
    SymC3 z = in.z();
    TripleS e = in.triple();
    BranchValue h = branch_h(z);
    return Output{{{"value", cplx_json(power_p(e, z))},
                   {"h1", cplx_json(h.h1)}, {"h2", cplx_json(h.h2)}, {"h3", cplx_json(h.h3)}}};
  };

  auto* sg = add("eval-gamma3", "matrix gamma function Gamma_3(s,w,u)");
  exps(sg);
  handlers["eval-gamma3"] = [&] { return Output{{{"value", cplx_json(gamma3(in.triple()))}}}; };

  auto* sl = add("verify-lemma-int", "quadrature path against the closed form of the matrix integral");
  exps(sl);
  zopt(sl);
  handlers["verify-lemma-int"] = [&] {
    LemmaIntReport r = lemma_int(in.triple(), in.z());
    return verdict({{"lhs", cplx_json(r.lhs)}, {"rhs", cplx_json(r.rhs)}, {"relative_gap", r.gap}}, r.gap,
                   tol_or(com, 1e-8));
  };

  auto* sc = add("verify-claim1", "inversion identity of the power function");
  exps(sc);
  zopt(sc);
  sc->add_option("--samples", in.samples, "additionally test this many seeded random (exponent, Z) pairs");
  handlers["verify-claim1"] = [&] {
    real gap = claim1_gap(in.triple(), in.z()), worst = gap;
    std::mt19937_64 rng(com.seed);
    for (long long n = 0; n < in.samples; ++n) {
      TripleS e{testing::random_cplx(rng, 3), testing::random_cplx(rng, 3), testing::random_cplx(rng, 3)};
      worst = std::max(worst, claim1_gap(e, testing::random_siegel(rng, 0.5, 2.0)));
    }
    return verdict({{"gap", gap}, {"samples", in.samples}, {"max_gap", worst}}, worst, tol_or(com, 1e-10));
  };

  auto* sv = add("verify-lipschitz", "both sides of the Lipschitz identity at matched truncation");
  exps(sv);
  zopt(sv);
  sv->add_option("--max-abs", in.max_abs, "lhs box half-width");
  sv->add_option("--trace-bound", in.trace_bound, "rhs trace bound");
  handlers["verify-lipschitz"] = [&] {
    LipschitzReport r = lipschitz_report(in.triple(), in.z(), in.max_abs, in.trace_bound, com.threads);
    return verdict({{"lhs", cplx_json(r.lhs)},
                    {"rhs", cplx_json(r.rhs)},
                    {"relative_gap", r.relative_gap},
                    {"rhs_literal", cplx_json(r.rhs_literal)},
                    {"literal_gap", r.literal_gap},
                    {"lhs_terms", r.lhs_terms},
                    {"rhs_terms", r.rhs_terms},
                    {"lhs_tail_estimate", r.lhs_tail_estimate}},
                   r.relative_gap, tol_or(com, 1e-3));
  };

  auto* scl = add("classical-lipschitz", "one-variable Lipschitz formula");
  scl->add_option("--tau", in.tau, "re,im");
  scl->add_option("--s", in.s, "re[,im]");
  scl->add_option("--bound", in.bound, "summation bound N");
  handlers["classical-lipschitz"] = [&] {
    ClassicalLipschitzReport r = classical_lipschitz(parse_cplx(in.tau, "--tau"), parse_cplx(in.s, "--s"),
                                                     static_cast<long long>(in.bound));
    json b{{"lhs", cplx_json(r.lhs)}, {"rhs", cplx_json(r.rhs)}, {"relative_gap", r.relative_gap}};
    real gap = r.relative_gap;
    if (r.has_closed_form) {
      b["closed_form"] = cplx_json(r.closed_form);
      b["rhs_closed_gap"] = r.rhs_closed_gap;
      gap = r.rhs_closed_gap;
    }
    return verdict(b, gap, tol_or(com, r.has_closed_form ? 1e-12 : 1e-6));
  };

  auto* sr = add("reduce", "Minkowski-reduce a half-integral form");
  sr->add_option("--form", in.form, "t1,t2,t3,b12,b13,b23 (doubled off-diagonals)")->required();
  handlers["reduce"] = [&] {
    HalfIntegralForm t = HalfIntegralForm::parse(in.form);
    ReducedForm r = minkowski_reduce(t);
    return Output{{{"input", form_json(t)}, {"form", form_json(r.form)}, {"U", r.U}, {"det", rat_str(r.form.det())},
                   {"eps", automorphism_count(r.form)}}};
  };

  auto* scs = add("classes", "reduced class representatives with det <= bound");
  scs->add_option("--det-bound", in.det_bound, "integer or p/q");
  handlers["classes"] = [&] {
    json list = json::array();
    for (const auto& c : reduced_classes(in.det()))
      list.push_back({{"form", form_json(c.rep.form)}, {"det", rat_str(c.det)}, {"eps", c.eps}});
    return Output{{{"count", list.size()}, {"classes", list}}};
  };

  auto* se = add("eps", "number of SL3(Z) automorphisms of a form");
  se->add_option("--form", in.form, "t1,t2,t3,b12,b13,b23")->required();
  handlers["eps"] = [&] {
    HalfIntegralForm t = HalfIntegralForm::parse(in.form);
    return Output{{{"form", form_json(t)}, {"eps", automorphism_count(t)}}};
  };

  auto* sei = add("eval-eisenstein", "Selberg Eisenstein series E(Y | s, w, u)");
  exps(sei);
  sei->add_option("--y", in.y, "y1,y2,y3,y12,y13,y23");
  sei->add_option("--bound", in.bound, "flag truncation for Y[v] and adj(Y)[n]");
  handlers["eval-eisenstein"] = [&] {
    return Output{series_json(selberg_E(in.ymat(), in.triple(), {in.bound, in.bound}, com.threads))};
  };

  auto* sep = add("eval-epstein", "Epstein zeta (1/2) sum Y[v]^{-s}");
  sep->add_option("--y", in.y, "y1,y2,y3,y12,y13,y23");
  sep->add_option("--s", in.s, "re[,im]");
  sep->add_option("--dim", in.dim, "2 or 3")->check(CLI::IsMember({2, 3}));
  sep->add_option("--bound", in.bound, "bound on Y[v]");
  handlers["eval-epstein"] = [&] {
    return Output{series_json(epstein(in.ymat(), in.dim, parse_cplx(in.s, "--s"), in.bound))};
  };

  auto* sz = add("verify-zetastar", "Bessel expansion of zeta* against the direct decomposition");
  sz->add_option("--s", in.s, "re[,im]");
  sz->add_option("--tau", in.tau, "re,im");
  handlers["verify-zetastar"] = [&] {
    ZetaStarReport r = zeta_Z2_star_report(parse_cplx(in.s, "--s"), parse_cplx(in.tau, "--tau"));
    real gap = r.residual / std::abs(r.bessel);
    return verdict({{"bessel", cplx_json(r.bessel)}, {"direct", cplx_json(r.direct)}, {"relative_gap", gap},
                    {"bessel_terms", r.bessel_terms}},
                   gap, tol_or(com, 1e-8));
  };

  add("fe-group", "closure of the functional-equation maps");
  handlers["fe-group"] = [&] {
    GroupTable g = closure({generator("w"), generator("a"), generator("aba")});
    DihedralCertificate cert = certify_dihedral(g);
    json elems = json::array();
    for (const auto& e : g.elements) {
      AffineMapQk at_k = e;
      for (auto& t : at_k.t) t = {t.alpha + t.beta * rational(com.k), 0};
      elems.push_back({{"label", e.label}, {"formula", e.formula()}, {"at_k", at_k.formula()}});
    }
    json body{{"k", com.k}, {"order", g.elements.size()}, {"dihedral", cert.ok}, {"elements", elems}};
    if (cert.ok) {
      body["rotation"] = g.elements[static_cast<std::size_t>(cert.r)].label;
      body["reflection"] = g.elements[static_cast<std::size_t>(cert.f)].label;
    }
    return Output{body};
  };

  auto* skm = add("eval-km", "Koecher-Maass series sum A_T / (eps_T det(T)^s)");
  skm->add_option("--coeffs", in.coeffs, "coefficient file (default: all A_T = 1)");
  skm->add_option("--s", in.s, "re[,im]");
  skm->add_option("--det-bound", in.det_bound, "integer or p/q");
  handlers["eval-km"] = [&] { return Output{km_json(km_classic(in.table(com.k), parse_cplx(in.s, "--s"), in.det()))}; };

  auto* skt = add("eval-km-twisted", "twisted Koecher-Maass series sum (A_T / eps_T) E(T | s, w, u)");
  exps(skt);
  skt->add_option("--coeffs", in.coeffs, "coefficient file (default: all A_T = 1)");
  skt->add_option("--det-bound", in.det_bound, "integer or p/q");
  skt->add_option("--bound", in.bound, "flag truncation");
  handlers["eval-km-twisted"] = [&] {
    CoefficientTable t = in.table(com.k);
    TripleS e = in.triple();
    SeriesValue v = km_twisted(t, e, in.det(), {in.bound, in.bound}, com.threads);
    json b = km_json(v);
    try {
      b["completed"] = cplx_json(lambda_completed(t, e, v.value));
    } catch (const Pole&) {
      b["completed"] = nullptr;
    }
    return Output{b};
  };

  auto* sep2 = add("enum-pairs", "canonical coprime symmetric pairs with entries <= max-abs");
  sep2->add_option("--max-abs", in.max_abs, "entry bound");
  handlers["enum-pairs"] = [&] {
    json list = json::array();
    auto pairs = enumerate_pairs(in.max_abs);
    for (const auto& p : pairs) list.push_back({{"C", p.C}, {"D", p.D}});
    return Output{{{"count", pairs.size()}, {"pairs", list}}};
  };

  auto* scp = add("complete-pair", "canonical form and symplectic completion of (C, D)");
  scp->add_option("--c", in.c, "9 integers, row-major");
  scp->add_option("--d", in.d, "9 integers, row-major");
  handlers["complete-pair"] = [&] {
    CoprimePair p = canonical_pair(parse_imat(in.c, "--c"), parse_imat(in.d, "--d"));
    SymplecticMat m = complete_to_symplectic(p);
    return Output{{{"canonical", {{"C", p.C}, {"D", p.D}}}, {"M", sym6_json(m)}, {"symplectic", is_symplectic(m)}}};
  };

  auto* spo = add("eval-poincare", "truncated Poincare series P_{k,T}(Z)");
  spo->add_option("--form", in.form, "t1,t2,t3,b12,b13,b23");
  spo->add_option("--max-abs", in.max_abs, "pair entry and GL3 column-norm bound");
  zopt(spo);
  handlers["eval-poincare"] = [&] {
    PoincareResult r = poincare_trunc(com.k, HalfIntegralForm::parse(in.form), in.z(), in.max_abs, com.threads);
    return Output{{{"value", cplx_json(r.value)}, {"terms", r.terms}, {"pairs_used", r.pairs_used},
                   {"gl3_ball_size", r.gl3_ball_size}}};
  };

  auto* sk = add("eval-kernel", "truncated kernel sum over classes");
  exps(sk);
  zopt(sk);
  sk->add_option("--det-bound", in.det_bound, "integer or p/q");
  sk->add_option("--bound", in.bound, "flag truncation");
  sk->add_option("--max-abs", in.max_abs, "Poincare truncation");
  handlers["eval-kernel"] = [&] {
    KernelResult r = kernel_trunc(com.k, in.triple(), in.z(), in.det(), {in.bound, in.bound}, in.max_abs, com.threads);
    return Output{{{"value", cplx_json(r.value)}, {"pairs_used", r.pairs_used}, {"classes_used", r.classes_used},
                   {"gl3_ball_size", r.gl3_ball_size}, {"outside_region", r.outside_region}}};
  };

  auto* sst = add("selftest", "run the acceptance suite (the determinism check is left to the acceptance binary)");
  sst->add_option("--only", in.only, "criterion ids")->delimiter(',');
  handlers["selftest"] = [&] {
    s3::suite::Options opt;
    opt.seed = com.seed;
    opt.threads = com.threads;
    opt.only.insert(in.only.begin(), in.only.end());
    auto results = s3::suite::run(opt, [](const s3::suite::Criterion& c, double secs) {
      std::fprintf(stderr, "%s criterion %d (%.2f s)\n", c.pass ? "PASS" : "FAIL", c.id, secs);
    });
    json body = s3::suite::to_json(results, com.seed);
    return Output{body, body["passed"] == body["total"] ? kOk : kVerifyFailed};
  };

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::string sub = argc > 1 ? argv[1] : "";
    std::cerr << "error: " << e.what() << "\nusage: siegel3 " << (handlers.count(sub) ? sub : "<subcommand>")
              << " [options] (see --help)\n";
    return kUsage;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  Output out;
  try {
    out = handlers.at(name)();
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\nusage: siegel3 " << name << " [options] (see --help)\n";
    return kUsage;
  } catch (const s3::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }

  if (com.format == "csv") {
    if (name == "classes") {
      std::cout << classes_csv(reduced_classes(in.det()));
    } else {
      std::cout << "key,value\n";
      flatten(out.body, "", std::cout);
    }
  } else {
    std::cout << out.body.dump() << '\n';
  }
  return out.code;
}
