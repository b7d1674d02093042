#include "siegel3/fe_group.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace s3 {

namespace {

std::string rat_str(const rational& r) {
  std::ostringstream os;
  os << r.numerator();
  if (r.denominator() != 1) os << '/' << r.denominator();
  return os.str();
}

// Appends "+ c*name" in a compact human form.
void append_term(std::string& out, const rational& c, const std::string& name) {
  if (c == rational(0)) return;
  rational a = c < rational(0) ? -c : c;
  if (out.empty()) {
    if (c < 0) out += "-";
  } else {
    out += c < 0 ? "-" : "+";
  }
  if (name.empty()) {
    out += rat_str(a);
  } else {
    if (a != rational(1)) out += rat_str(a) + "*";
    out += name;
  }
}

}  // namespace

std::string Qk::str() const {
  std::string out;
  append_term(out, alpha, "");
  append_term(out, beta, "k");
  return out.empty() ? "0" : out;
}

AffineMapQk AffineMapQk::identity() {
  AffineMapQk f;
  for (int i = 0; i < 3; ++i) f.M[i][i] = 1;
  f.label = "id";
  return f;
}

QkPoint AffineMapQk::apply(const QkPoint& p) const {
  QkPoint out;
  for (int i = 0; i < 3; ++i) {
    Qk acc = t[i];
    for (int j = 0; j < 3; ++j) acc = acc + p[j] * M[i][j];
    out[i] = acc;
  }
  return out;
}

std::string AffineMapQk::formula() const {
  static const char* names[3] = {"s", "w", "u"};
  std::string out = "(";
  for (int i = 0; i < 3; ++i) {
    std::string c;
    for (int j = 0; j < 3; ++j) append_term(c, M[i][j], names[j]);
    append_term(c, t[i].alpha, "");
    append_term(c, t[i].beta, "k");
    out += c.empty() ? "0" : c;
    out += i < 2 ? ", " : ")";
  }
  return out;
}

AffineMapQk compose(const AffineMapQk& f, const AffineMapQk& g) {
  AffineMapQk h;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      rational acc = 0;
      for (int l = 0; l < 3; ++l) acc += f.M[i][l] * g.M[l][j];
      h.M[i][j] = acc;
    }
    Qk acc = f.t[i];
    for (int l = 0; l < 3; ++l) acc = acc + g.t[l] * f.M[i][l];
    h.t[i] = acc;
  }
  if (f.label == "id") h.label = g.label;
  else if (g.label == "id") h.label = f.label;
  else h.label = f.label + g.label;
  return h;
}

std::vector<AffineMapQk> generators() {
  const rational h(1, 2);
  const Qk zero{0, 0}, one{1, 0}, k{0, 1}, mh{-h, 0};
  AffineMapQk w{{{{0, 1, 0}, {1, 0, 0}, {-1, -1, -1}}}, {zero, zero, k}, "w"};      // (w, s, -s-w-u+k)
  AffineMapQk a{{{{1, 1, 0}, {0, -1, 0}, {0, 1, 1}}}, {mh, one, mh}, "a"};          // (s+w-1/2, 1-w, w+u-1/2)
  AffineMapQk b{{{{-1, 0, 0}, {1, 1, 0}, {0, 0, 1}}}, {one, mh, zero}, "b"};        // (1-s, s+w-1/2, u)
  AffineMapQk aba{{{{0, -1, 0}, {-1, 0, 0}, {1, 1, 1}}}, {one, one, Qk{-1, 0}}, "aba"};  // (1-w, 1-s, s+w+u-1)
  return {w, a, b, aba};
}

const AffineMapQk& generator(const std::string& label) {
  static const std::vector<AffineMapQk> gens = generators();
  for (const auto& g : gens)
    if (g.label == label) return g;
  throw DomainError("unknown generator '" + label + "'");
}

int GroupTable::index_of(const AffineMapQk& f) const {
  for (std::size_t i = 0; i < elements.size(); ++i)
    if (elements[i].same_map(f)) return static_cast<int>(i);
  return -1;
}

int GroupTable::order(int i) const {
  int n = 1, cur = i;
  while (cur != 0) {
    cur = cayley[static_cast<std::size_t>(cur)][static_cast<std::size_t>(i)];
    ++n;
    if (n > static_cast<int>(elements.size()) + 1) throw Error("element order exceeds group size");
  }
  return n;
}

int GroupTable::inverse(int i) const {
  for (std::size_t j = 0; j < elements.size(); ++j)
    if (cayley[static_cast<std::size_t>(i)][j] == 0) return static_cast<int>(j);
  throw Error("no inverse in table");
}

GroupTable closure(const std::vector<AffineMapQk>& gens, std::size_t cap) {
  GroupTable g;
  g.elements.push_back(AffineMapQk::identity());
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    std::size_t i = queue.front();
    queue.pop_front();
    for (const auto& gen : gens) {
      AffineMapQk h = compose(gen, g.elements[i]);
      if (g.index_of(h) >= 0) continue;
      if (g.elements.size() >= cap) throw Diverged("closure exceeds the element cap");
      g.elements.push_back(h);
      queue.push_back(g.elements.size() - 1);
    }
  }
  std::size_t n = g.elements.size();
  g.cayley.assign(n, std::vector<int>(n, -1));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      int idx = g.index_of(compose(g.elements[i], g.elements[j]));
      if (idx < 0) throw Error("closure is not closed under composition");
      g.cayley[i][j] = idx;
    }
  return g;
}

DihedralCertificate certify_dihedral(const GroupTable& g) {
  DihedralCertificate c;
  if (g.elements.size() != 12) return c;
  std::vector<int> rs, fs;
  // Prefer the witness (aw, b) when both are present.
  int aw = g.index_of(compose(generator("a"), generator("w"))), b = g.index_of(generator("b"));
  if (aw >= 0) rs.push_back(aw);
  if (b >= 0) fs.push_back(b);
  for (int i = 0; i < 12; ++i) {
    rs.push_back(i);
    fs.push_back(i);
  }
  for (int r : rs) {
    if (g.order(r) != 6) continue;
    for (int f : fs) {
      if (g.order(f) != 2) continue;
      auto fr = static_cast<std::size_t>(g.cayley[static_cast<std::size_t>(f)][static_cast<std::size_t>(r)]);
      if (g.cayley[fr][static_cast<std::size_t>(f)] == g.inverse(r)) {
        c.ok = true;
        c.r = r;
        c.f = f;
        return c;
      }
    }
  }
  return c;
}

std::vector<QkPoint> orbit(const QkPoint& p, const GroupTable& g) {
  std::vector<QkPoint> out;
  for (const auto& e : g.elements) {
    QkPoint q = e.apply(p);
    if (std::find(out.begin(), out.end(), q) == out.end()) out.push_back(q);
  }
  return out;
}

QkPoint substitute_k(const QkPoint& p, const rational& k) {
  QkPoint out;
  for (int i = 0; i < 3; ++i) out[i] = {p[i].alpha + p[i].beta * k, 0};
  return out;
}

}  // namespace s3
