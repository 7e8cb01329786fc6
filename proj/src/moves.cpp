#include "sprouts/moves.hpp"

#include <algorithm>
#include <map>

namespace sprouts {

std::string move_kind_to_string(MoveKind k) {
  switch (k) {
    case MoveKind::I: return "I";
    case MoveKind::IIAa: return "IIAa";
    case MoveKind::IIAb: return "IIAb";
    case MoveKind::IIAc: return "IIAc";
    case MoveKind::IIB1a: return "IIB1a";
    case MoveKind::IIB1b: return "IIB1b";
    case MoveKind::IIB1c: return "IIB1c";
    case MoveKind::IIB2a: return "IIB2a";
    case MoveKind::IIB2b: return "IIB2b";
  }
  return "?";
}

namespace {

bool is_self_link(MoveKind k) { return k != MoveKind::I; }
bool is_split(MoveKind k) {
  return k == MoveKind::IIAa || k == MoveKind::IIAb || k == MoveKind::IIAc;
}

std::string bits_to_string(uint32_t mask, int width) {
  std::string s = "0b";
  for (int i = std::max(width, 1) - 1; i >= 0; --i)
    s += (mask >> i & 1) ? '1' : '0';
  return s;
}

// Walk segment from index `from` forward (with wraparound) up to and
// including index `to`. from == to means the full cycle with the endpoint
// repeated. A spot contributes itself once: it has no incident edge, so
// there is nothing to walk around. An unstarred singleton (a degree-1
// vertex whose dead neighbours were stripped) keeps the generic repeated
// endpoint, matching what stripping the unstripped walk would leave.
std::vector<std::string> closed_segment(const Boundary& b, int from, int to) {
  const std::vector<std::string>& walk = b.walk;
  const int n = static_cast<int>(walk.size());
  if (b.spot) return {walk[0]};
  std::vector<std::string> seg;
  int len = (to - from + n) % n + 1;
  if (from == to) len = n + 1;
  for (int t = 0; t < len; ++t) seg.push_back(walk[(from + t) % n]);
  return seg;
}

std::vector<std::string> closed_segment_reversed(const Boundary& b, int from,
                                                 int to) {
  const std::vector<std::string>& walk = b.walk;
  const int n = static_cast<int>(walk.size());
  if (b.spot) return {walk[0]};
  std::vector<std::string> seg;
  int len = (from - to + n) % n + 1;
  if (from == to) len = n + 1;
  for (int t = 0; t < len; ++t) seg.push_back(walk[(from - t % n + n) % n]);
  return seg;
}

void check_occurrence(const Boundary& b, int i) {
  if (i < 0 || i >= static_cast<int>(b.walk.size()))
    throw std::out_of_range("occurrence " + std::to_string(i) +
                            " out of range");
}

}  // namespace

std::string move_to_string(const Move& m) {
  std::string s = "region#" + std::to_string(m.region) +
                  " kind=" + move_kind_to_string(m.kind) + " end1=(b" +
                  std::to_string(m.end1.boundary) + ",o" +
                  std::to_string(m.end1.occurrence) + ") end2=(b" +
                  std::to_string(m.end2.boundary) + ",o" +
                  std::to_string(m.end2.occurrence) + ")";
  if (is_split(m.kind))
    s += " split=(" + surface_to_string(m.surfaces.first) + "," +
         surface_to_string(m.surfaces.second) + ")";
  else if (is_self_link(m.kind))
    s += " to=" + surface_to_string(m.surfaces.first);
  if (m.kind == MoveKind::I && m.flip) s += " flip";
  s += " mask=" + bits_to_string(m.distribution, 0) +
       " flips=" + bits_to_string(m.orientation, 0);
  return s;
}

Boundary merge_boundaries(const Boundary& b1, int i, const Boundary& b2, int j,
                          bool flip, const std::string& c) {
  if (&b1 == &b2) throw IllegalMove("kind I endpoints on the same boundary");
  check_occurrence(b1, i);
  check_occurrence(b2, j);
  Boundary out;
  auto seg1 = closed_segment(b1, i, i);
  auto seg2 = flip ? closed_segment_reversed(b2, j, j)
                   : closed_segment(b2, j, j);
  out.walk = std::move(seg1);
  out.walk.push_back(c);
  out.walk.insert(out.walk.end(), seg2.begin(), seg2.end());
  out.walk.push_back(c);
  return out;
}

std::pair<Boundary, Boundary> split_boundary(const Boundary& b, int i, int j,
                                             bool reversed,
                                             const std::string& c) {
  check_occurrence(b, i);
  check_occurrence(b, j);
  if (i > j) std::swap(i, j);
  Boundary first, second;
  first.walk = closed_segment(b, j, i);
  first.walk.push_back(c);
  if (i == j)
    second.walk = {b.walk[i]};
  else if (reversed)
    second.walk = closed_segment_reversed(b, j, i);
  else
    second.walk = closed_segment(b, i, j);
  second.walk.push_back(c);
  return {std::move(first), std::move(second)};
}

Boundary fold_boundary(const Boundary& b, int i, int j, const std::string& c) {
  check_occurrence(b, i);
  check_occurrence(b, j);
  if (i > j) std::swap(i, j);
  Boundary out;
  out.walk = closed_segment(b, j, i);
  out.walk.push_back(c);
  if (i == j) {
    out.walk.push_back(b.walk[i]);
  } else {
    for (int t = j; t >= i; --t) out.walk.push_back(b.walk[t]);
  }
  out.walk.push_back(c);
  return out;
}

std::string fresh_vertex_name(const Position& p) {
  std::set<std::string> used;
  for (const std::string& v : vertex_names(p)) used.insert(v);
  for (int k = 0;; ++k) {
    std::string name = "n" + std::to_string(k);
    if (!used.count(name)) return name;
  }
}

namespace {

// True when reversing the cyclic walk yields the same boundary, in which
// case an orientation flip of it cannot change the position.
bool reversal_symmetric(const std::vector<std::string>& walk) {
  const int n = static_cast<int>(walk.size());
  if (n <= 2) return true;
  auto min_rotation = [n](const std::vector<std::string>& w) {
    std::vector<std::string> best;
    for (int s = 0; s < n; ++s) {
      std::vector<std::string> cand;
      for (int t = 0; t < n; ++t) cand.push_back(w[(s + t) % n]);
      if (best.empty() || cand < best) best = std::move(cand);
    }
    return best;
  };
  std::vector<std::string> rev(walk.rbegin(), walk.rend());
  return min_rotation(walk) == min_rotation(rev);
}

struct RegionContext {
  const Position& p;
  int region;
  std::map<std::string, int> lives;
  std::string fresh;
};

bool endpoints_alive(const RegionContext& ctx, const std::string& v1,
                     const std::string& v2) {
  auto lives = [&](const std::string& v) { return ctx.lives.at(v); };
  if (v1 == v2) return lives(v1) >= 2;
  return lives(v1) >= 1 && lives(v2) >= 1;
}

// Orientation vectors over the boundaries that will form a new orientable
// region. Flips of reversal-symmetric walks are dropped and the first
// asymmetric bit is pinned to 0: flipping every boundary at once mirrors the
// whole region, which canonicalization already identifies.
std::vector<uint32_t> orientation_masks(
    const std::vector<const std::vector<std::string>*>& walks) {
  std::vector<int> free_bits;
  for (size_t i = 0; i < walks.size(); ++i)
    if (!reversal_symmetric(*walks[i])) free_bits.push_back(static_cast<int>(i));
  if (!free_bits.empty()) free_bits.erase(free_bits.begin());
  std::vector<uint32_t> masks;
  for (uint32_t v = 0; v < (1u << free_bits.size()); ++v) {
    uint32_t mask = 0;
    for (size_t t = 0; t < free_bits.size(); ++t)
      if (v >> t & 1) mask |= 1u << free_bits[t];
    masks.push_back(mask);
  }
  return masks;
}

void push_split_moves(std::vector<Move>& out, const RegionContext& ctx, int bi,
                      int i, int j) {
  const Region& r = ctx.p.regions[ctx.region];
  const Boundary& b = r.boundaries[bi];
  const int m = static_cast<int>(r.boundaries.size()) - 1;

  std::vector<const std::vector<std::string>*> other_walks;
  for (int t = 0; t < static_cast<int>(r.boundaries.size()); ++t)
    if (t != bi) other_walks.push_back(&r.boundaries[t].walk);

  auto [piece1, piece2] = split_boundary(b, i, j, false, ctx.fresh);

  for (const auto& [s1, s2] : split_options(r.surface)) {
    std::vector<std::pair<SurfaceKind, SurfaceKind>> orders{{s1, s2}};
    if (s1 != s2) orders.push_back({s2, s1});
    for (const auto& pair : orders) {
      MoveKind kind;
      if (r.surface.orientable)
        kind = MoveKind::IIAa;
      else if (!pair.first.orientable && !pair.second.orientable)
        kind = MoveKind::IIAb;
      else
        kind = MoveKind::IIAc;
      for (uint32_t mask = 0; mask < (1u << m); ++mask) {
        std::vector<uint32_t> omasks{0};
        if (!r.surface.orientable &&
            (pair.first.orientable || pair.second.orientable)) {
          bool first_part = pair.first.orientable;
          std::vector<const std::vector<std::string>*> part_walks;
          part_walks.push_back(first_part ? &piece1.walk : &piece2.walk);
          for (int t = 0; t < m; ++t)
            if (((mask >> t & 1) != 0) == first_part)
              part_walks.push_back(other_walks[t]);
          omasks = orientation_masks(part_walks);
        }
        for (uint32_t omask : omasks) {
          Move mv;
          mv.region = ctx.region;
          mv.end1 = {bi, i};
          mv.end2 = {bi, j};
          mv.kind = kind;
          mv.surfaces = pair;
          mv.distribution = mask;
          mv.orientation = omask;
          mv.new_vertex = ctx.fresh;
          out.push_back(std::move(mv));
        }
      }
    }
  }
}

void push_nonseparating_moves(std::vector<Move>& out, const RegionContext& ctx,
                              int bi, int i, int j) {
  const Region& r = ctx.p.regions[ctx.region];
  const Boundary& b = r.boundaries[bi];

  std::vector<const std::vector<std::string>*> other_walks;
  for (int t = 0; t < static_cast<int>(r.boundaries.size()); ++t)
    if (t != bi) other_walks.push_back(&r.boundaries[t].walk);

  for (const SurfaceKind& s : nonseparating_options(r.surface,
                                                    CutBoundaries::two)) {
    MoveKind kind = r.surface.orientable  ? MoveKind::IIB1a
                    : s.orientable        ? MoveKind::IIB1c
                                          : MoveKind::IIB1b;
    std::vector<uint32_t> omasks{0};
    if (kind == MoveKind::IIB1c) {
      auto [piece1, piece2] =
          split_boundary(b, i, j, true, ctx.fresh);
      std::vector<const std::vector<std::string>*> walks{&piece1.walk,
                                                         &piece2.walk};
      walks.insert(walks.end(), other_walks.begin(), other_walks.end());
      omasks = orientation_masks(walks);
    }
    for (uint32_t omask : omasks) {
      Move mv;
      mv.region = ctx.region;
      mv.end1 = {bi, i};
      mv.end2 = {bi, j};
      mv.kind = kind;
      mv.surfaces = {s, s};
      mv.orientation = omask;
      mv.new_vertex = ctx.fresh;
      out.push_back(std::move(mv));
    }
  }

  for (const SurfaceKind& s : nonseparating_options(r.surface,
                                                    CutBoundaries::one)) {
    MoveKind kind = s.orientable ? MoveKind::IIB2b : MoveKind::IIB2a;
    std::vector<uint32_t> omasks{0};
    if (kind == MoveKind::IIB2b) {
      Boundary folded = fold_boundary(b, i, j, ctx.fresh);
      std::vector<const std::vector<std::string>*> walks{&folded.walk};
      walks.insert(walks.end(), other_walks.begin(), other_walks.end());
      omasks = orientation_masks(walks);
    }
    for (uint32_t omask : omasks) {
      Move mv;
      mv.region = ctx.region;
      mv.end1 = {bi, i};
      mv.end2 = {bi, j};
      mv.kind = kind;
      mv.surfaces = {s, s};
      mv.orientation = omask;
      mv.new_vertex = ctx.fresh;
      out.push_back(std::move(mv));
    }
  }
}

}  // namespace

std::vector<Move> enumerate_region_moves(const Position& p, int region) {
  if (region < 0 || region >= static_cast<int>(p.regions.size()))
    throw std::out_of_range("region index " + std::to_string(region));
  RegionContext ctx{p, region, lives_map(p), fresh_vertex_name(p)};

  const Region& r = p.regions[region];
  std::vector<Move> out;

  // Kind I, unordered boundary pairs: swapping the two endpoints only
  // rotates/reflects the merged walk.
  for (int b1 = 0; b1 < static_cast<int>(r.boundaries.size()); ++b1)
    for (int b2 = b1 + 1; b2 < static_cast<int>(r.boundaries.size()); ++b2)
      for (int i = 0; i < static_cast<int>(r.boundaries[b1].walk.size()); ++i)
        for (int j = 0; j < static_cast<int>(r.boundaries[b2].walk.size());
             ++j) {
          if (!endpoints_alive(ctx, r.boundaries[b1].walk[i],
                               r.boundaries[b2].walk[j]))
            continue;
          int flips = (!r.surface.orientable &&
                       r.boundaries[b2].walk.size() > 2)
                          ? 2
                          : 1;
          for (int f = 0; f < flips; ++f) {
            Move mv;
            mv.region = region;
            mv.end1 = {b1, i};
            mv.end2 = {b2, j};
            mv.kind = MoveKind::I;
            mv.flip = f != 0;
            mv.surfaces = {r.surface, r.surface};
            mv.new_vertex = ctx.fresh;
            out.push_back(std::move(mv));
          }
        }

  // Kind II: self-links, occurrence pairs i <= j on one boundary.
  for (int bi = 0; bi < static_cast<int>(r.boundaries.size()); ++bi) {
    const Boundary& b = r.boundaries[bi];
    for (int i = 0; i < static_cast<int>(b.walk.size()); ++i)
      for (int j = i; j < static_cast<int>(b.walk.size()); ++j) {
        if (!endpoints_alive(ctx, b.walk[i], b.walk[j])) continue;
        push_split_moves(out, ctx, bi, i, j);
        push_nonseparating_moves(out, ctx, bi, i, j);
      }
  }
  return out;
}

std::vector<Move> enumerate_moves(const Position& p) {
  std::vector<Move> out;
  for (int ri = 0; ri < static_cast<int>(p.regions.size()); ++ri) {
    auto ms = enumerate_region_moves(p, ri);
    out.insert(out.end(), ms.begin(), ms.end());
  }
  return out;
}

namespace {

void apply_orientation(std::vector<Boundary>& boundaries, uint32_t mask) {
  for (size_t i = 0; i < boundaries.size(); ++i)
    if (mask >> i & 1)
      std::reverse(boundaries[i].walk.begin(), boundaries[i].walk.end());
}

}  // namespace

Position apply_move(const Position& p, const Move& m) {
  if (m.region < 0 || m.region >= static_cast<int>(p.regions.size()))
    throw IllegalMove("region index out of range");
  const Region& r = p.regions[m.region];
  auto in_range = [&](const Endpoint& e) {
    return e.boundary >= 0 &&
           e.boundary < static_cast<int>(r.boundaries.size()) &&
           e.occurrence >= 0 &&
           e.occurrence <
               static_cast<int>(r.boundaries[e.boundary].walk.size());
  };
  if (!in_range(m.end1) || !in_range(m.end2))
    throw IllegalMove("endpoint out of range");

  const std::string& v1 = r.boundaries[m.end1.boundary].walk[m.end1.occurrence];
  const std::string& v2 = r.boundaries[m.end2.boundary].walk[m.end2.occurrence];
  if (v1 == v2) {
    if (lives_of(p, v1) < 2) throw IllegalMove("vertex " + v1 + " lacks lives");
  } else if (lives_of(p, v1) < 1 || lives_of(p, v2) < 1) {
    throw IllegalMove("endpoint vertex has no life left");
  }
  for (const std::string& v : vertex_names(p))
    if (v == m.new_vertex) throw IllegalMove("new vertex name is in use");

  if (m.kind == MoveKind::I) {
    if (m.end1.boundary == m.end2.boundary)
      throw IllegalMove("kind I needs two different boundaries");
    if (m.flip && r.surface.orientable)
      throw IllegalMove("flip in an orientable region");
    Region nr;
    nr.surface = r.surface;
    nr.boundaries.push_back(merge_boundaries(
        r.boundaries[m.end1.boundary], m.end1.occurrence,
        r.boundaries[m.end2.boundary], m.end2.occurrence, m.flip,
        m.new_vertex));
    for (int t = 0; t < static_cast<int>(r.boundaries.size()); ++t)
      if (t != m.end1.boundary && t != m.end2.boundary)
        nr.boundaries.push_back(r.boundaries[t]);
    Position out = p;
    out.regions[m.region] = std::move(nr);
    return out;
  }

  if (m.end1.boundary != m.end2.boundary ||
      m.end1.occurrence > m.end2.occurrence)
    throw IllegalMove("self-link endpoints must be ordered on one boundary");
  const int bi = m.end1.boundary;
  const int i = m.end1.occurrence, j = m.end2.occurrence;
  std::vector<Boundary> others;
  for (int t = 0; t < static_cast<int>(r.boundaries.size()); ++t)
    if (t != bi) others.push_back(r.boundaries[t]);

  Position out = p;
  if (is_split(m.kind)) {
    if (!split_options(r.surface).count(
            m.surfaces.first <= m.surfaces.second
                ? SurfacePair{m.surfaces.first, m.surfaces.second}
                : SurfacePair{m.surfaces.second, m.surfaces.first}))
      throw IllegalMove("surface pair not splittable from " +
                        surface_to_string(r.surface));
    auto [piece1, piece2] =
        split_boundary(r.boundaries[bi], i, j, false, m.new_vertex);
    Region r1{m.surfaces.first, {std::move(piece1)}};
    Region r2{m.surfaces.second, {std::move(piece2)}};
    for (size_t t = 0; t < others.size(); ++t)
      (m.distribution >> t & 1 ? r1 : r2).boundaries.push_back(others[t]);
    if (!r.surface.orientable) {
      if (r1.surface.orientable) apply_orientation(r1.boundaries, m.orientation);
      if (r2.surface.orientable) apply_orientation(r2.boundaries, m.orientation);
    }
    out.regions[m.region] = std::move(r1);
    out.regions.insert(out.regions.begin() + m.region + 1, std::move(r2));
    return out;
  }

  if (m.kind == MoveKind::IIB1a || m.kind == MoveKind::IIB1b ||
      m.kind == MoveKind::IIB1c) {
    if (!nonseparating_options(r.surface, CutBoundaries::two)
             .count(m.surfaces.first))
      throw IllegalMove("surface not reachable by a two-boundary cut");
    bool reversed = m.kind == MoveKind::IIB1c;
    auto [piece1, piece2] =
        split_boundary(r.boundaries[bi], i, j, reversed, m.new_vertex);
    Region nr{m.surfaces.first, {std::move(piece1), std::move(piece2)}};
    nr.boundaries.insert(nr.boundaries.end(), others.begin(), others.end());
    if (!r.surface.orientable && nr.surface.orientable)
      apply_orientation(nr.boundaries, m.orientation);
    out.regions[m.region] = std::move(nr);
    return out;
  }

  if (!nonseparating_options(r.surface, CutBoundaries::one)
           .count(m.surfaces.first))
    throw IllegalMove("surface not reachable by a one-boundary cut");
  Region nr{m.surfaces.first,
            {fold_boundary(r.boundaries[bi], i, j, m.new_vertex)}};
  nr.boundaries.insert(nr.boundaries.end(), others.begin(), others.end());
  if (nr.surface.orientable) apply_orientation(nr.boundaries, m.orientation);
  out.regions[m.region] = std::move(nr);
  return out;
}

std::set<std::string> children(const Position& p, const SimplifyOptions& opts) {
  std::set<std::string> keys;
  for (const Move& m : enumerate_moves(p))
    keys.insert(canonical_form(apply_move(p, m), opts));
  return keys;
}

}  // namespace sprouts
