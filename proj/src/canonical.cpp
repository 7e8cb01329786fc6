#include "sprouts/canonical.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace sprouts {

Position simplify(const Position& p, const SimplifyOptions& opts) {
  Position out = p;

  std::map<std::string, int> lives = lives_map(p);

  if (opts.strip_dead) {
    for (Region& r : out.regions) {
      for (Boundary& b : r.boundaries)
        std::erase_if(b.walk,
                      [&](const std::string& v) { return lives[v] == 0; });
      std::erase_if(r.boundaries,
                    [](const Boundary& b) { return b.walk.empty(); });
    }

    // A region with at most one life is unplayable; it matters only if one
    // of its vertices still borders another region.
    std::map<std::string, int> region_count;
    for (const Region& r : out.regions) {
      std::set<std::string> names;
      for (const Boundary& b : r.boundaries)
        for (const std::string& v : b.walk) names.insert(v);
      for (const std::string& v : names) ++region_count[v];
    }
    std::erase_if(out.regions, [&](const Region& r) {
      int sum = 0;
      std::set<std::string> names;
      for (const Boundary& b : r.boundaries)
        for (const std::string& v : b.walk) names.insert(v);
      for (const std::string& v : names) {
        sum += lives[v];
        if (region_count[v] > 1) return false;
      }
      return sum <= 1;
    });
  }

  for (Region& r : out.regions) {
    std::set<std::string> names;
    for (const Boundary& b : r.boundaries)
      for (const std::string& v : b.walk) names.insert(v);
    int sum = 0;
    for (const std::string& v : names) sum += lives[v];
    if (opts.small_region_to_sphere && sum <= 3)
      r.surface = SurfaceKind::sphere();
    else if (opts.genus_clamp && r.surface.orientable)
      r.surface.genus = std::min(r.surface.genus, std::max(0, sum - 3));
  }
  return out;
}

namespace {

// The minimization works on interned integer walks: vertex names become ids
// 0..V-1 and renamings become small dense vectors, so candidate states are
// cheap to copy and compare. A walk rendition is a vector of renamed ids with
// -1 prefixed for spots ('*' sorts before any name). Renamed ids compare
// numerically, which matches the serialized string order for single-digit
// ids and stays a sound total order beyond.
struct IntWalk {
  std::vector<int> w;
  bool spot = false;
};

struct IntPosition {
  std::vector<std::string> tags;               // surface tag per region
  std::vector<bool> orientable;                // per region
  std::vector<std::vector<IntWalk>> regions;   // walks per region
  std::vector<std::vector<int>> region_count;  // [region][vertex] occurrences
  std::vector<int> total_count;                // [vertex] occurrences
  int vertex_count = 0;
};

IntPosition intern(const Position& p) {
  IntPosition ip;
  std::map<std::string, int> ids;
  for (const Region& r : p.regions) {
    ip.tags.push_back(surface_to_string(r.surface));
    ip.orientable.push_back(r.surface.orientable);
    std::vector<IntWalk> walks;
    for (const Boundary& b : r.boundaries) {
      IntWalk iw;
      iw.spot = b.spot;
      for (const std::string& v : b.walk) {
        auto [it, ins] = ids.try_emplace(v, static_cast<int>(ids.size()));
        iw.w.push_back(it->second);
      }
      walks.push_back(std::move(iw));
    }
    ip.regions.push_back(std::move(walks));
  }
  ip.vertex_count = static_cast<int>(ids.size());
  ip.total_count.assign(ip.vertex_count, 0);
  for (const auto& walks : ip.regions) {
    std::vector<int> cnt(ip.vertex_count, 0);
    for (const IntWalk& b : walks)
      for (int v : b.w) {
        ++cnt[v];
        ++ip.total_count[v];
      }
    ip.region_count.push_back(std::move(cnt));
  }
  return ip;
}

// Partial renaming: to[orig] is the emitted id, or -1 if not yet seen.
struct Rename {
  std::vector<int> to;
  int next = 0;

  explicit Rename(int n) : to(n, -1) {}
};

using Walk = std::vector<int>;  // rendition: renamed ids, -1 spot marker

// Renders into `out` and simultaneously compares against `bound` (the best
// walk so far), aborting as soon as the rendition is strictly greater;
// returns false on abort. Fresh ids assigned into rename are recorded in
// `assigned` so the caller can roll them back instead of copying the map.
bool render_walk_bounded(const IntWalk& b, int start, bool reversed,
                         Rename& rename, std::vector<int>& assigned, Walk& out,
                         const Walk* bound) {
  const int n = static_cast<int>(b.w.size());
  out.clear();
  bool decided = false;  // already known strictly smaller than bound
  if (b.spot) {
    out.push_back(-1);
    if (bound) {
      if (bound->empty()) return false;
      if ((*bound)[0] > -1) decided = true;  // marker sorts below every id
    }
  }
  for (int t = 0; t < n; ++t) {
    int idx = reversed ? (start - t % n + n) % n : (start + t) % n;
    int v = b.w[idx];
    int& slot = rename.to[v];
    if (slot < 0) {
      slot = rename.next++;
      assigned.push_back(v);
    }
    out.push_back(slot);
    if (bound && !decided) {
      size_t at = out.size() - 1;
      if (at >= bound->size()) return false;  // longer => greater
      int have = out[at], want = (*bound)[at];
      if (have > want) return false;
      if (have < want) decided = true;
    }
  }
  return true;
}

void rollback(Rename& rename, std::vector<int>& assigned) {
  for (int v : assigned) rename.to[v] = -1;
  rename.next -= static_cast<int>(assigned.size());
  assigned.clear();
}

using Body = std::vector<Walk>;  // boundary renditions in emitted order

struct Cand {
  uint64_t used = 0;
  Rename rename;
};

// Candidates whose renamings differ only on vertices with no occurrence left
// to emit produce identical futures, so the dedup key masks those entries.
// This collapses the factorial fan-out of interchangeable boundaries (all
// spots, say) to a single candidate. The key is built in a reusable scratch
// buffer and the rename is copied into a Cand only for genuinely new entries.
struct CandSeen {
  std::map<uint64_t, std::set<std::vector<int>>> by_mask;
  std::vector<int> scratch;

  void clear() { by_mask.clear(); }
  bool keep(std::vector<Cand>& next, uint64_t used, const Rename& rename,
            const std::vector<int>& remaining) {
    scratch = rename.to;
    for (size_t v = 0; v < scratch.size(); ++v)
      if (remaining[v] <= 0) scratch[v] = -2;
    auto& set = by_mask[used];
    if (set.find(scratch) != set.end()) return false;
    set.insert(scratch);
    next.push_back(Cand{used, rename});
    return true;
  }
};

// Minimal rendition of one region's boundary list given an inbound renaming.
// per_boundary_reflect is false for orientable regions, where only the given
// global reflection applies.
std::pair<Body, std::vector<Cand>> min_region_body(
    const std::vector<IntWalk>& walks, const Rename& rename_in,
    bool per_boundary_reflect, bool reflect_all,
    const std::vector<int>& base_remaining) {
  const int m = static_cast<int>(walks.size());
  // Occurrences a vertex still has ahead: outside this region (base) plus in
  // the not-yet-emitted boundaries of the given mask.
  auto remaining_for = [&](uint64_t used_mask) {
    std::vector<int> rem = base_remaining;
    for (int b = 0; b < m; ++b)
      if (!(used_mask >> b & 1))
        for (int v : walks[b].w) ++rem[v];
    return rem;
  };
  Body out;
  std::vector<Cand> cands{{0, rename_in}};
  std::vector<int> assigned;
  Walk scratch;
  CandSeen seen;
  std::map<uint64_t, std::vector<int>> rem_cache;
  for (int slot = 0; slot < m; ++slot) {
    Walk best;
    bool have_best = false;
    std::vector<Cand> next;
    seen.clear();
    rem_cache.clear();
    for (Cand& c : cands) {
      for (int bi = 0; bi < m; ++bi) {
        if (c.used >> bi & 1) continue;
        const IntWalk& b = walks[bi];
        const int n = static_cast<int>(b.w.size());
        for (int start = 0; start < n; ++start) {
          for (int rev = 0; rev < 2; ++rev) {
            if (!per_boundary_reflect && rev != (reflect_all ? 1 : 0)) continue;
            if (per_boundary_reflect && rev && n <= 2)
              continue;  // reversal duplicates the forward renditions
            bool keep = render_walk_bounded(b, start, rev != 0, c.rename,
                                            assigned, scratch,
                                            have_best ? &best : nullptr);
            if (keep) {
              if (!have_best || scratch < best) {
                best = scratch;
                have_best = true;
                next.clear();
                seen.clear();
                rem_cache.clear();
              } else if (scratch != best) {
                keep = false;
              }
            }
            if (keep) {
              uint64_t nu = c.used | (1ull << bi);
              auto [it, ins] = rem_cache.try_emplace(nu);
              if (ins) it->second = remaining_for(nu);
              seen.keep(next, nu, c.rename, it->second);
            }
            rollback(c.rename, assigned);
          }
        }
      }
    }
    out.push_back(std::move(best));
    cands = std::move(next);
  }
  return {std::move(out), std::move(cands)};
}

std::pair<Body, std::vector<Cand>> min_region_rendition(
    const IntPosition& ip, int region, const Rename& rename_in,
    const std::vector<int>& base_remaining) {
  Body best;
  bool have_best = false;
  std::vector<Cand> cands;
  CandSeen seen;
  const int variants = ip.orientable[region] ? 2 : 1;
  for (int v = 0; v < variants; ++v) {
    auto [body, cs] = min_region_body(ip.regions[region], rename_in,
                                      !ip.orientable[region], v == 1,
                                      base_remaining);
    if (!have_best || body < best) {
      best = std::move(body);
      have_best = true;
      cands.clear();
      seen.clear();
    } else if (body != best) {
      continue;
    }
    for (Cand& c : cs) seen.keep(cands, c.used, c.rename, base_remaining);
  }
  return {std::move(best), std::move(cands)};
}

std::string serialize_rendition(const std::string& tag, const Body& body) {
  std::string out = tag;
  out += '{';
  for (size_t bi = 0; bi < body.size(); ++bi) {
    if (bi) out += ',';
    bool first = true;
    for (int id : body[bi]) {
      if (id < 0) {
        out += '*';
        continue;
      }
      if (!first) out += '.';
      first = false;
      out += 'v' + std::to_string(id);
    }
  }
  out += '}';
  return out;
}

std::string min_position_rendition(const Position& p) {
  const int k = static_cast<int>(p.regions.size());
  if (k == 0) return "";
  IntPosition ip = intern(p);
  std::string out;
  std::vector<Cand> cands{{0, Rename(ip.vertex_count)}};
  for (int slot = 0; slot < k; ++slot) {
    std::string best_tag;
    Body best_body;
    bool have_best = false;
    std::vector<Cand> next;
    CandSeen seen;
    for (const Cand& c : cands) {
      for (int ri = 0; ri < k; ++ri) {
        if (c.used >> ri & 1) continue;
        // Region order: compare by tag first ("P1" < "S" < "T1"), then body.
        if (have_best && ip.tags[ri] > best_tag) continue;
        // Occurrences outside the regions emitted so far including ri.
        std::vector<int> base = ip.total_count;
        for (int r = 0; r < k; ++r)
          if (r == ri || (c.used >> r & 1))
            for (int v = 0; v < ip.vertex_count; ++v)
              base[v] -= ip.region_count[r][v];
        auto [body, cs] = min_region_rendition(ip, ri, c.rename, base);
        bool better = !have_best || ip.tags[ri] < best_tag ||
                      (ip.tags[ri] == best_tag && body < best_body);
        if (better) {
          best_tag = ip.tags[ri];
          best_body = std::move(body);
          have_best = true;
          next.clear();
          seen.clear();
        } else if (ip.tags[ri] != best_tag || body != best_body) {
          continue;
        }
        // The region-level mask replaces the boundary-level one here.
        for (Cand& rc : cs)
          seen.keep(next, c.used | (1ull << ri), rc.rename, base);
      }
    }
    if (slot) out += ';';
    out += serialize_rendition(best_tag, best_body);
    cands = std::move(next);
  }
  return out;
}

}  // namespace

std::string canonical_form(const Position& p, const SimplifyOptions& opts) {
  return min_position_rendition(simplify(p, opts));
}

std::vector<Position> decompose(const Position& p) {
  const int k = static_cast<int>(p.regions.size());
  std::vector<int> parent(k);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };

  std::map<std::string, int> lives = lives_map(p);
  std::map<std::string, int> first_region;
  for (int ri = 0; ri < k; ++ri) {
    std::set<std::string> names;
    for (const Boundary& b : p.regions[ri].boundaries)
      for (const std::string& v : b.walk) names.insert(v);
    for (const std::string& v : names) {
      if (lives.at(v) < 1) continue;
      auto [it, inserted] = first_region.try_emplace(v, ri);
      if (!inserted) parent[find(ri)] = find(it->second);
    }
  }

  std::map<int, Position> parts;
  for (int ri = 0; ri < k; ++ri)
    parts[find(ri)].regions.push_back(p.regions[ri]);
  std::vector<Position> out;
  for (auto& [root, part] : parts) out.push_back(std::move(part));
  return out;
}

}  // namespace sprouts
