#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "sprouts/surface.hpp"

namespace sprouts {

// A boundary is a cyclic walk of vertex names. A spot boundary holds a
// single untouched starting vertex (degree 0, 3 lives); its occurrence does
// not count toward the vertex degree.
struct Boundary {
  std::vector<std::string> walk;
  bool spot = false;

  auto operator<=>(const Boundary&) const = default;
};

struct Region {
  SurfaceKind surface;
  std::vector<Boundary> boundaries;

  auto operator<=>(const Region&) const = default;
};

struct Position {
  std::vector<Region> regions;

  auto operator<=>(const Position&) const = default;
};

enum class ViolationKind {
  SyntaxError,
  AmbiguousDegree,
  DegreeOverflow,
  BadSurfaceTag,
  SpotNotAlone,
};

struct Violation {
  ViolationKind kind;
  std::string detail;
};

struct ParseError : std::runtime_error {
  ViolationKind kind;
  ParseError(ViolationKind k, const std::string& msg)
      : std::runtime_error(msg), kind(k) {}
};

// Grammar (whitespace ignored on input, canonical output has none):
//   position = region {";" region}
//   region   = surface "{" [boundary {"," boundary}] "}"
//   boundary = vertex {"." vertex}
//   vertex   = ["*"] name
// A "*" marks a spot; an unstarred vertex has the degree given by its
// occurrence count, so an unstarred singleton occurring nowhere else is a
// degree-1 vertex (such boundaries arise once dead vertices are stripped).
Position parse_position(const std::string& text);
std::string serialize_position(const Position& p);

// Occurrence count outside spot boundaries; a spot has degree 0.
int degree_of(const Position& p, const std::string& name);
int lives_of(const Position& p, const std::string& name);

// Lives of every vertex in one pass over the position.
std::map<std::string, int> lives_map(const Position& p);

std::vector<Violation> validate(const Position& p);

// One region on s holding p spot boundaries named v0, v1, ...
Position initial_position(int spots, const SurfaceKind& s);

// Sum of lives over the distinct vertices on the region's boundaries.
int region_lives(const Position& p, int region);

int total_lives(const Position& p);

// All vertex names of p in first-occurrence order.
std::vector<std::string> vertex_names(const Position& p);

}  // namespace sprouts
