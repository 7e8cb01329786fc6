#pragma once

#include <string>
#include <vector>

#include "sprouts/position.hpp"

namespace sprouts {

struct SimplifyOptions {
  bool strip_dead = true;             // drop 0-life vertices and dead regions
  bool small_region_to_sphere = true; // regions with <= 3 lives become S
  bool genus_clamp = false;           // orientable genus <= max(0, lives - 3)
};

// Game-preserving cleanup: removes dead vertices and boundaries, drops
// unplayable regions whose lives cannot be spent elsewhere, and normalizes
// region surfaces where the game cannot tell them apart.
Position simplify(const Position& p, const SimplifyOptions& opts = {});

// Lexicographically minimal serialization of simplify(p) over region
// permutations, boundary permutations, walk rotations, walk reflections
// (independent per boundary in non-orientable regions, simultaneous over a
// region's boundaries in orientable ones) and renaming to v0, v1, ... in
// first-occurrence order.
std::string canonical_form(const Position& p, const SimplifyOptions& opts = {});

// Partition of a simplified position into components connected by shared
// live vertices.
std::vector<Position> decompose(const Position& p);

}  // namespace sprouts
