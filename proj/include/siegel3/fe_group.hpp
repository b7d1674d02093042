#pragma once

#include <array>
#include <string>
#include <vector>

#include "siegel3/lattice.hpp"

namespace s3 {

// alpha + beta k with k symbolic.
struct Qk {
  rational alpha{0}, beta{0};
  Qk operator+(const Qk& o) const { return {alpha + o.alpha, beta + o.beta}; }
  Qk operator-(const Qk& o) const { return {alpha - o.alpha, beta - o.beta}; }
  Qk operator*(const rational& c) const { return {alpha * c, beta * c}; }
  bool operator==(const Qk& o) const { return alpha == o.alpha && beta == o.beta; }
  bool operator<(const Qk& o) const { return alpha != o.alpha ? alpha < o.alpha : beta < o.beta; }
  std::string str() const;
};

using QkPoint = std::array<Qk, 3>;

// x -> M x + t on (s, w, u).
struct AffineMapQk {
  std::array<std::array<rational, 3>, 3> M{};
  std::array<Qk, 3> t{};
  std::string label;

  static AffineMapQk identity();
  QkPoint apply(const QkPoint& p) const;
  // Equality of the maps (labels ignored).
  bool same_map(const AffineMapQk& o) const { return M == o.M && t == o.t; }
  std::string formula() const;  // e.g. "(s+w-1/2, 1-w, w+u-1/2)"
};

// f o g: apply g first.
AffineMapQk compose(const AffineMapQk& f, const AffineMapQk& g);

// The four maps w, a, b, aba.
std::vector<AffineMapQk> generators();
const AffineMapQk& generator(const std::string& label);

struct GroupTable {
  std::vector<AffineMapQk> elements;  // elements[0] is the identity
  std::vector<std::vector<int>> cayley;  // cayley[i][j] = index of elements[i] o elements[j]
  int index_of(const AffineMapQk& f) const;  // -1 if absent
  int order(int i) const;
  int inverse(int i) const;
};

// Breadth-first closure; labels of new elements are the shortest words found.
GroupTable closure(const std::vector<AffineMapQk>& gens, std::size_t cap = 256);

struct DihedralCertificate {
  bool ok = false;
  int r = -1;  // element of order 6
  int f = -1;  // involution with f r f = r^{-1}
};
DihedralCertificate certify_dihedral(const GroupTable& g);

// Distinct images of p under the group, in table order.
std::vector<QkPoint> orbit(const QkPoint& p, const GroupTable& g);
// Substitute a numeric k.
QkPoint substitute_k(const QkPoint& p, const rational& k);

}  // namespace s3
