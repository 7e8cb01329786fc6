#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sprouts {

// A boundaryless compact surface up to homeomorphism: the sphere S,
// the sum of n tori T^n, or the sum of n projective planes P^n.
struct SurfaceKind {
  bool orientable = true;
  int genus = 0;  // n in T^n or P^n; P^0 does not exist

  static SurfaceKind sphere() { return {true, 0}; }
  static SurfaceKind torus(int n) { return {true, n}; }
  static SurfaceKind projective(int n) { return {false, n}; }

  bool valid() const { return genus >= 0 && (orientable || genus >= 1); }

  auto operator<=>(const SurfaceKind&) const = default;
};

// Text form: "S" | "T"<nat> | "P"<posnat>. "T0" is accepted on input and
// normalized to "S" on output.
std::string surface_to_string(const SurfaceKind& s);
std::optional<SurfaceKind> parse_surface(const std::string& text);

int euler_characteristic(const SurfaceKind& s);
int euler_with_boundaries(const SurfaceKind& s, int boundaries);

SurfaceKind connected_sum(const SurfaceKind& a, const SurfaceKind& b);

// A fundamental-polygon word: each letter names a polygon side, inverted
// when the side is traversed against its arrow. Every letter must occur
// exactly twice in a well-formed word.
struct PolygonLetter {
  std::string name;
  bool inverted = false;
};

struct PolygonWord {
  std::vector<PolygonLetter> letters;
};

struct PolygonWordError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Accepts e.g. "aba'b'" or "a b a^-1 b^-1"; a letter is one alphanumeric
// character, inversion a trailing apostrophe or "^-1". Whitespace ignored.
PolygonWord parse_polygon_word(const std::string& text);
std::string polygon_word_to_string(const PolygonWord& w);

// Classifies the quotient surface of the polygon by corner identification:
// V corner classes, E distinct letters, F = 1, then genus from chi.
SurfaceKind classify_polygon_word(const PolygonWord& w);

using SurfacePair = std::pair<SurfaceKind, SurfaceKind>;

// Surfaces a separating loop can cut s into (unordered pairs whose
// connected sum is s).
std::set<SurfacePair> split_options(const SurfaceKind& s);

enum class CutBoundaries { one, two };

// Surfaces reachable by cutting along a non-separating loop; empty when no
// such loop exists.
std::set<SurfaceKind> nonseparating_options(const SurfaceKind& s,
                                            CutBoundaries created);

}  // namespace sprouts
