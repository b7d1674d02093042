#include "siegel3/km.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "siegel3/parallel.hpp"
#include "siegel3/special.hpp"

namespace s3 {

namespace {

cplx cpow_real(real base, cplx e) { return std::exp(e * std::log(base)); }

real to_real(const rational& r) { return static_cast<real>(r.numerator()) / static_cast<real>(r.denominator()); }

void check_weight(long long k) {
  if (k <= 0 || k % 2 != 0) throw ParseError("weight k must be a positive even integer");
}

// Geometric extrapolation from the dyadic det shells (N/4, N/2] and (N/2, N].
real dyadic_tail(const std::vector<ClassInfo>& classes, const std::vector<real>& mags, rational bound) {
  real s_outer = 0, s_inner = 0;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (classes[i].det * 2 > bound) s_outer += mags[i];
    else if (classes[i].det * 4 > bound) s_inner += mags[i];
  }
  if (s_inner <= 0 || s_outer >= s_inner) return std::numeric_limits<real>::infinity();
  real r = s_outer / s_inner;
  return s_outer * r / (1 - r);
}

std::vector<ClassInfo> classes_upto(rational det_bound) {
  if (det_bound <= 0) return {};
  return reduced_classes(det_bound);
}

}  // namespace

CoefficientTable parse_coefficients(std::istream& in) {
  CoefficientTable t;
  t.name = "file";
  bool have_header = false;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first) || first[0] == '#') continue;
    auto fail = [&](const std::string& why) {
      throw ParseError("coefficients line " + std::to_string(lineno) + ": " + why);
    };
    if (!have_header) {
      long long k;
      if (first != "k" || !(ls >> k)) fail("expected header 'k <even int>'");
      std::string rest;
      if (ls >> rest) fail("trailing text after header");
      check_weight(k);
      t.k = static_cast<int>(k);
      have_header = true;
      continue;
    }
    std::istringstream full(line);
    long long v[6];
    real re, im;
    for (auto& x : v)
      if (!(full >> x)) fail("expected six integers");
    if (!(full >> re >> im)) fail("expected re im");
    std::string rest;
    if (full >> rest) fail("trailing text");
    HalfIntegralForm key{v[0], v[1], v[2], v[3], v[4], v[5]};
    if (!is_canonical(key)) throw NonReducedKey("coefficients line " + std::to_string(lineno) + ": " + key.str() +
                                                " is not a canonical reduced form");
    if (!t.entries.emplace(key, cplx(re, im)).second)
      throw DuplicateKey("coefficients line " + std::to_string(lineno) + ": duplicate key " + key.str());
  }
  if (!have_header) throw ParseError("coefficients: missing header");
  return t;
}

CoefficientTable load_coefficients(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open " + path);
  return parse_coefficients(f);
}

CoefficientTable ones_provider(int k) {
  check_weight(k);
  CoefficientTable t;
  t.k = k;
  t.provider = [](const HalfIntegralForm&) { return cplx(1); };
  t.name = "ones";
  return t;
}

CoefficientTable det_power_provider(int k, cplx alpha) {
  check_weight(k);
  CoefficientTable t;
  t.k = k;
  t.provider = [alpha](const HalfIntegralForm& f) { return cpow_real(to_real(f.det()), alpha); };
  t.name = "det_power";
  return t;
}

CoefficientTable linear_combination(cplx alpha, const CoefficientTable& f, cplx beta, const CoefficientTable& g) {
  if (f.k != g.k) throw DomainError("linear_combination: weights differ");
  CoefficientTable t;
  t.k = f.k;
  t.provider = [alpha, beta, f, g](const HalfIntegralForm& key) {
    return alpha * coefficient(f, key) + beta * coefficient(g, key);
  };
  t.name = "combination";
  return t;
}

cplx coefficient(const CoefficientTable& table, const HalfIntegralForm& t, std::size_t* misses) {
  HalfIntegralForm key = is_canonical(t) ? t : minkowski_reduce(t).form;
  if (table.provider) return table.provider(key);
  auto it = table.entries.find(key);
  if (it == table.entries.end()) {
    if (misses) ++*misses;
    return 0;
  }
  return it->second;
}

SeriesValue km_classic(const CoefficientTable& table, cplx s, rational det_bound) {
  SeriesValue r;
  auto classes = classes_upto(det_bound);
  std::vector<real> mags;
  KahanSum<cplx> acc;
  for (const auto& c : classes) {
    cplx a = coefficient(table, c.rep.form, &r.misses);
    cplx term = a / (static_cast<real>(c.eps) * cpow_real(to_real(c.det), s));
    acc.add(term);
    mags.push_back(std::abs(term));
    r.max_det = std::max(r.max_det, c.det);
  }
  r.value = acc.value();
  r.classes_used = classes.size();
  r.tail_estimate = dyadic_tail(classes, mags, det_bound);
  if (s.real() <= 2 + table.k / 2.0) {
    r.outside_region = true;
    r.warnings.push_back("Re(s) <= 2 + k/2: outside the region of absolute convergence");
  }
  return r;
}

SeriesValue km_twisted(const CoefficientTable& table, const TripleS& e, rational det_bound,
                       const TruncationSpec& flag_trunc, unsigned threads) {
  SeriesValue r;
  auto classes = classes_upto(det_bound);
  auto terms = map_chunks<std::pair<cplx, bool>>(classes.size(), threads, [&](std::size_t i) {
    const ClassInfo& c = classes[i];
    SeriesResult E = selberg_E(c.rep.form.to_real(), e, flag_trunc);
    return std::pair<cplx, bool>{E.value / static_cast<real>(c.eps), E.outside_region};
  });
  std::vector<real> mags;
  KahanSum<cplx> acc;
  bool flag_outside = false;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    cplx term = coefficient(table, classes[i].rep.form, &r.misses) * terms[i].first;
    acc.add(term);
    mags.push_back(std::abs(term));
    flag_outside = flag_outside || terms[i].second;
    r.max_det = std::max(r.max_det, classes[i].det);
  }
  r.value = acc.value();
  r.classes_used = classes.size();
  r.tail_estimate = dyadic_tail(classes, mags, det_bound);
  real half_k = table.k / 2.0;
  if (e.s.real() <= 1 || e.w.real() <= 1 || e.u.real() <= half_k + 1) {
    r.outside_region = true;
    r.warnings.push_back("outside region I: need Re(s) > 1, Re(w) > 1, Re(u) > k/2 + 1");
  }
  if (e.u.real() <= table.k + 1) r.warnings.push_back("Re(u) <= k + 1: below the stricter threshold");
  if (flag_outside) {
    r.outside_region = true;
    r.warnings.push_back("flag sum evaluated outside its region of absolute convergence");
  }
  return r;
}

cplx lambda_completed(const CoefficientTable&, const TripleS& e, cplx km_value) {
  auto near_gamma_pole = [](cplx z) {
    real n = std::round(z.real());
    return n <= 0 && std::abs(z - n) < 1e-10;
  };
  cplx g1 = e.s + e.w + e.u - 1.0, g2 = e.w + e.u - 0.5, g3 = e.u;
  for (cplx z : {g1, g2, g3})
    if (near_gamma_pole(z)) throw Pole("lambda_completed: Gamma pole");
  // xi(2x) = pi^{-x} Gamma(x) zeta(2x) has poles at x = 0 and x = 1/2.
  for (cplx x : {e.s, e.w, e.s + e.w - 0.5})
    if (std::abs(x) < 1e-10 || std::abs(x - 0.5) < 1e-10) throw Pole("lambda_completed: xi pole");
  cplx pre = std::exp(-e.weight() * std::log(2 * kPi));
  return pre * complex_gamma(g1) * complex_gamma(g2) * complex_gamma(g3) * xi2(e.s) * xi2(e.w) *
         xi2(e.s + e.w - 0.5) * km_value;
}

}  // namespace s3
