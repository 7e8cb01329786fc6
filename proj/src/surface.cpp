#include "sprouts/surface.hpp"

#include <cctype>
#include <map>
#include <numeric>

namespace sprouts {

std::string surface_to_string(const SurfaceKind& s) {
  if (s.orientable) {
    if (s.genus == 0) return "S";
    return "T" + std::to_string(s.genus);
  }
  return "P" + std::to_string(s.genus);
}

std::optional<SurfaceKind> parse_surface(const std::string& text) {
  if (text.empty()) return std::nullopt;
  if (text == "S") return SurfaceKind::sphere();
  char tag = text[0];
  if (tag != 'T' && tag != 'P') return std::nullopt;
  if (text.size() < 2) return std::nullopt;
  int genus = 0;
  for (size_t i = 1; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) return std::nullopt;
    genus = genus * 10 + (text[i] - '0');
    if (genus > 1000000) return std::nullopt;
  }
  SurfaceKind s{tag == 'T', genus};
  if (!s.valid()) return std::nullopt;  // rejects "P0"
  return s;
}

int euler_characteristic(const SurfaceKind& s) {
  return s.orientable ? 2 - 2 * s.genus : 2 - s.genus;
}

int euler_with_boundaries(const SurfaceKind& s, int boundaries) {
  return euler_characteristic(s) - boundaries;
}

SurfaceKind connected_sum(const SurfaceKind& a, const SurfaceKind& b) {
  if (a.orientable && b.orientable) return SurfaceKind::torus(a.genus + b.genus);
  if (!a.orientable && !b.orientable)
    return SurfaceKind::projective(a.genus + b.genus);
  const SurfaceKind& p = a.orientable ? b : a;
  const SurfaceKind& t = a.orientable ? a : b;
  return SurfaceKind::projective(p.genus + 2 * t.genus);
}

PolygonWord parse_polygon_word(const std::string& text) {
  PolygonWord w;
  size_t i = 0;
  while (i < text.size()) {
    char ch = text[i];
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++i;
      continue;
    }
    if (!std::isalnum(static_cast<unsigned char>(ch)))
      throw PolygonWordError(std::string("unexpected character '") + ch + "'");
    PolygonLetter letter;
    letter.name = std::string(1, ch);
    ++i;
    if (i < text.size() && text[i] == '\'') {
      letter.inverted = true;
      ++i;
    } else if (text.compare(i, 3, "^-1") == 0) {
      letter.inverted = true;
      i += 3;
    }
    w.letters.push_back(letter);
  }
  if (w.letters.empty()) throw PolygonWordError("empty word");
  return w;
}

std::string polygon_word_to_string(const PolygonWord& w) {
  std::string out;
  for (const auto& l : w.letters) {
    out += l.name;
    if (l.inverted) out += '\'';
  }
  return out;
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

SurfaceKind classify_polygon_word(const PolygonWord& w) {
  const int n = static_cast<int>(w.letters.size());
  if (n == 0) throw PolygonWordError("empty word");

  std::map<std::string, std::vector<int>> occurrences;
  for (int i = 0; i < n; ++i) occurrences[w.letters[i].name].push_back(i);
  for (const auto& [name, occ] : occurrences)
    if (occ.size() != 2)
      throw PolygonWordError("letter '" + name + "' occurs " +
                             std::to_string(occ.size()) + " times");

  // Side i runs from corner i to corner (i+1) mod n, in arrow direction when
  // the letter is plain and against it when inverted.
  bool orientable = true;
  UnionFind corners(n);
  for (const auto& [name, occ] : occurrences) {
    int i = occ[0], j = occ[1];
    bool invi = w.letters[i].inverted, invj = w.letters[j].inverted;
    int tail_i = invi ? (i + 1) % n : i;
    int head_i = invi ? i : (i + 1) % n;
    int tail_j = invj ? (j + 1) % n : j;
    int head_j = invj ? j : (j + 1) % n;
    corners.unite(tail_i, tail_j);
    corners.unite(head_i, head_j);
    if (invi == invj) orientable = false;
  }

  int vertices = 0;
  for (int i = 0; i < n; ++i)
    if (corners.find(i) == i) ++vertices;
  const int edges = static_cast<int>(occurrences.size());
  const int chi = vertices - edges + 1;

  SurfaceKind s;
  s.orientable = orientable;
  s.genus = orientable ? (2 - chi) / 2 : 2 - chi;
  return s;
}

std::set<SurfacePair> split_options(const SurfaceKind& s) {
  auto ordered = [](SurfaceKind a, SurfaceKind b) {
    return a <= b ? SurfacePair{a, b} : SurfacePair{b, a};
  };
  std::set<SurfacePair> out;
  const int n = s.genus;
  if (s.orientable) {
    for (int k = 0; k <= n; ++k)
      out.insert(ordered(SurfaceKind::torus(k), SurfaceKind::torus(n - k)));
  } else {
    for (int k = 1; k < n; ++k)
      out.insert(
          ordered(SurfaceKind::projective(k), SurfaceKind::projective(n - k)));
    for (int k = 0; 2 * k < n; ++k)
      out.insert(
          ordered(SurfaceKind::torus(k), SurfaceKind::projective(n - 2 * k)));
  }
  return out;
}

std::set<SurfaceKind> nonseparating_options(const SurfaceKind& s,
                                            CutBoundaries created) {
  std::set<SurfaceKind> out;
  const int n = s.genus;
  if (created == CutBoundaries::two) {
    if (s.orientable) {
      if (n >= 1) out.insert(SurfaceKind::torus(n - 1));
    } else {
      if (n >= 3) out.insert(SurfaceKind::projective(n - 2));
      if (n % 2 == 0) out.insert(SurfaceKind::torus((n - 2) / 2));
    }
  } else {
    if (!s.orientable) {
      if (n >= 2) out.insert(SurfaceKind::projective(n - 1));
      if (n % 2 == 1) out.insert(SurfaceKind::torus((n - 1) / 2));
    }
  }
  return out;
}

}  // namespace sprouts
