#pragma once

#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "siegel3/eisenstein.hpp"

namespace s3 {

// Fourier coefficients A_T keyed by canonical reduced forms. A synthetic table
// carries a provider evaluated on the canonical representative instead.
struct CoefficientTable {
  int k = 24;
  std::map<HalfIntegralForm, cplx> entries;
  std::function<cplx(const HalfIntegralForm&)> provider;
  std::string name;
};

// Text format: header "k <even int>", then "t1 t2 t3 b12 b13 b23 re im" per line.
// Blank lines and lines starting with '#' are skipped.
CoefficientTable parse_coefficients(std::istream& in);
CoefficientTable load_coefficients(const std::string& path);

CoefficientTable ones_provider(int k);
CoefficientTable det_power_provider(int k, cplx alpha);  // A_T = (det T)^alpha
// alpha f + beta g (weights must agree).
CoefficientTable linear_combination(cplx alpha, const CoefficientTable& f, cplx beta, const CoefficientTable& g);

// A of the class of T; 0 for a missing class, counted in *misses when given.
cplx coefficient(const CoefficientTable& table, const HalfIntegralForm& t, std::size_t* misses = nullptr);

struct SeriesValue {
  cplx value;
  std::size_t classes_used = 0;
  rational max_det{0};
  std::size_t misses = 0;
  bool outside_region = false;
  std::vector<std::string> warnings;
  // Heuristic size of the omitted classes: the last dyadic det shell
  // extrapolated geometrically from the one before. +inf when undecidable.
  real tail_estimate = 0;
};

// sum over classes of A_T / (eps_T (det T)^s).
SeriesValue km_classic(const CoefficientTable& table, cplx s, rational det_bound);

// sum over classes of (A_T / eps_T) E(T | s, w, u).
SeriesValue km_twisted(const CoefficientTable& table, const TripleS& e, rational det_bound,
                       const TruncationSpec& flag_trunc, unsigned threads = 1);

// (2 pi)^{-(s+2w+3u)} Gamma(s+w+u-1) Gamma(w+u-1/2) Gamma(u) xi(2s) xi(2w) xi(2s+2w-1) km_value.
// Throws Pole when any factor is within 1e-10 of a pole.
cplx lambda_completed(const CoefficientTable& table, const TripleS& e, cplx km_value);

}  // namespace s3
