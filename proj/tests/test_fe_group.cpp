#include "doctest.h"
#include "helpers.hpp"
#include "siegel3/fe_group.hpp"

using namespace s3;
using namespace s3::testing;

namespace {

rational rand_rat(std::mt19937_64& rng) {
  return rational(uniform_int(rng, -40, 40), uniform_int(rng, 1, 9));
}

}  // namespace

TEST_CASE("generators are involutions and compose as stated") {
  AffineMapQk id = AffineMapQk::identity();
  for (const auto& g : generators()) CHECK(compose(g, g).same_map(id));
  const auto &w = generator("w"), &a = generator("a"), &b = generator("b"), &aba = generator("aba");
  CHECK(compose(id, b).same_map(b));
  CHECK(compose(a, compose(b, a)).same_map(aba));
  CHECK(compose(compose(a, b), a).same_map(aba));
  const Qk zero{0, 0}, h{rational(1, 2), 0};
  AffineMapQk aw{{{{1, 1, 0}, {-1, 0, 0}, {0, -1, -1}}}, {zero - h, Qk{1, 0}, Qk{rational(-1, 2), 1}}, "aw"};
  CHECK(compose(a, w).same_map(aw));
  CHECK(compose(a, w).formula() == "(s+w-1/2, -s+1, -w-u-1/2+k)");
  CHECK(a.formula() == "(s+w-1/2, -w+1, w+u-1/2)");
  CHECK(w.formula() == "(w, s, -s-w-u+k)");
  CHECK_THROWS_AS(generator("c"), DomainError);
}

TEST_CASE("closure is D12") {
  GroupTable g = closure({generator("w"), generator("a"), generator("aba")});
  REQUIRE(g.elements.size() == 12);
  CHECK(closure(generators()).elements.size() == 12);
  CHECK(closure({generator("a"), generator("w")}).elements.size() == 12);
  CHECK(closure({generator("w")}).elements.size() == 2);

  AffineMapQk aw = compose(generator("a"), generator("w"));
  int r = g.index_of(aw), f = g.index_of(generator("b"));
  REQUIRE(r >= 0);
  REQUIRE(f >= 0);
  CHECK(g.order(r) == 6);
  CHECK(g.order(f) == 2);
  const AffineMapQk& b = generator("b");
  CHECK(compose(b, compose(aw, b)).same_map(g.elements[static_cast<std::size_t>(g.inverse(r))]));
  int fr = g.cayley[static_cast<std::size_t>(f)][static_cast<std::size_t>(r)];
  CHECK(g.order(fr) == 2);

  // Latin square.
  for (std::size_t i = 0; i < 12; ++i) {
    std::vector<bool> row(12), col(12);
    for (std::size_t j = 0; j < 12; ++j) {
      row[static_cast<std::size_t>(g.cayley[i][j])] = true;
      col[static_cast<std::size_t>(g.cayley[j][i])] = true;
    }
    CHECK(std::count(row.begin(), row.end(), true) == 12);
    CHECK(std::count(col.begin(), col.end(), true) == 12);
  }

  DihedralCertificate c = certify_dihedral(g);
  CHECK(c.ok);
  CHECK(c.r == r);
  CHECK(c.f == f);
  CHECK(!certify_dihedral(closure({generator("w")})).ok);
}

TEST_CASE("random words stay in the closure") {
  GroupTable g = closure(generators());
  auto gens = generators();
  std::mt19937_64 rng(7);
  for (int n = 0; n < 200; ++n) {
    AffineMapQk h = AffineMapQk::identity();
    for (int i = 0; i < 20; ++i) h = compose(gens[static_cast<std::size_t>(uniform_int(rng, 0, 3))], h);
    CHECK(g.index_of(h) >= 0);
  }
}

TEST_CASE("bad generators diverge") {
  AffineMapQk shift = AffineMapQk::identity();
  shift.t[0] = Qk{1, 0};
  shift.label = "t";
  CHECK_THROWS_AS(closure({shift}, 64), Diverged);
}

TEST_CASE("orbits") {
  GroupTable g = closure(generators());
  std::mt19937_64 rng(11);
  int full = 0;
  for (int n = 0; n < 100; ++n) {
    QkPoint p{Qk{rand_rat(rng), 0}, Qk{rand_rat(rng), 0}, Qk{rand_rat(rng), 0}};
    auto o = orbit(substitute_k(p, 24), g);
    CHECK(12 % o.size() == 0);
    full += o.size() == 12;
    CHECK(orbit(p, closure({generator("a")})).size() <= 2);
  }
  CHECK(full > 90);
  QkPoint generic{Qk{rational(3, 7), 0}, Qk{rational(11, 5), 0}, Qk{rational(-2, 3), 0}};
  CHECK(orbit(substitute_k(generic, 24), g).size() == 12);
  // Symbolic k keeps the k-part of the translations apart.
  CHECK(orbit(generic, g).size() == 12);
  CHECK(substitute_k({Qk{1, 2}, Qk{0, 1}, Qk{rational(1, 2), -1}}, 24)[2] == Qk{rational(-47, 2), 0});
}
