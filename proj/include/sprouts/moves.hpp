#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "sprouts/canonical.hpp"
#include "sprouts/position.hpp"
#include "sprouts/surface.hpp"

namespace sprouts {

// I       link between two different boundaries
// II.A    separating self-link: the region splits in two
// II.B.1  non-separating self-link, cutting would create two boundaries
// II.B.2  non-separating self-link, cutting would create one boundary
enum class MoveKind { I, IIAa, IIAb, IIAc, IIB1a, IIB1b, IIB1c, IIB2a, IIB2b };

std::string move_kind_to_string(MoveKind k);

struct Endpoint {
  int boundary = 0;
  int occurrence = 0;

  auto operator<=>(const Endpoint&) const = default;
};

struct Move {
  int region = 0;
  Endpoint end1, end2;  // for self-links end1.occurrence <= end2.occurrence
  MoveKind kind = MoveKind::I;
  // Kind I: flip reverses the second boundary (non-orientable regions only).
  bool flip = false;
  // II.A: ordered surface pair; surfaces.first goes with the boundary piece
  // that keeps the walk outside [i..j]. Other kinds use surfaces.first only.
  std::pair<SurfaceKind, SurfaceKind> surfaces;
  // II.A: bit b set sends the region's b-th other boundary to the first part.
  uint32_t distribution = 0;
  // Per-boundary walk reversals of the resulting orientable region when the
  // source region was non-orientable (II.A.(c), II.B.1.(c), II.B.2.(b)).
  uint32_t orientation = 0;
  std::string new_vertex;
};

// Diagnostic form, e.g.
//   region#0 kind=IIAa end1=(b0,o1) end2=(b0,o3) split=(S,T1) mask=0b01
//   flips=0b0
std::string move_to_string(const Move& m);

struct IllegalMove : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Boundary rewrite primitives (new vertex c has degree 2 afterwards).
Boundary merge_boundaries(const Boundary& b1, int i, const Boundary& b2, int j,
                          bool flip, const std::string& c);
std::pair<Boundary, Boundary> split_boundary(const Boundary& b, int i, int j,
                                             bool reversed,
                                             const std::string& c);
Boundary fold_boundary(const Boundary& b, int i, int j, const std::string& c);

// Fresh vertex names "n0", "n1", ... avoiding those already in p.
std::string fresh_vertex_name(const Position& p);

std::vector<Move> enumerate_region_moves(const Position& p, int region);
std::vector<Move> enumerate_moves(const Position& p);

Position apply_move(const Position& p, const Move& m);

// Canonical keys of all positions one move away, deduplicated.
std::set<std::string> children(const Position& p,
                               const SimplifyOptions& opts = {});

}  // namespace sprouts
