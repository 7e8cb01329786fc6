#include "sprouts/solver.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <unordered_map>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace sprouts {

namespace {

int mex(const std::set<int>& values) {
  int m = 0;
  while (values.count(m)) ++m;
  return m;
}

// Interned image of one child position: names become dense ids so that
// simplification, decomposition and cache-key building run on small int
// vectors instead of string maps.
struct FastBoundary {
  std::vector<int> walk;
  bool spot = false;
};

struct FastRegion {
  SurfaceKind surface;
  std::vector<FastBoundary> boundaries;
};

// Minimal rendition of one walk over rotations (and reflections when
// allowed), with fresh ids assigned greedily in emission order: choosing the
// rotation jointly with the renaming is what makes two stored rotations of
// the same walk come out identical. Winner assignments are committed to
// rename/next, losers rolled back.
std::vector<int> render_walk_min(const std::vector<int>& walk,
                                 bool allow_reflect, std::vector<int>& rename,
                                 int& next) {
  const int n = static_cast<int>(walk.size());
  std::vector<int> best, scratch, assigned;
  int best_start = 0;
  bool best_rev = false;
  for (int rev = 0; rev < (allow_reflect && n > 2 ? 2 : 1); ++rev)
    for (int start = 0; start < std::max(n, 1); ++start) {
      scratch.clear();
      for (int t = 0; t < n; ++t) {
        int idx = rev ? (start - t % n + n) % n : (start + t) % n;
        int v = walk[idx];
        if (rename[v] < 0) {
          rename[v] = next++;
          assigned.push_back(v);
        }
        scratch.push_back(rename[v]);
      }
      for (int v : assigned) rename[v] = -1;
      next -= static_cast<int>(assigned.size());
      assigned.clear();
      if (best.empty() || scratch < best) {
        best = scratch;
        best_start = start;
        best_rev = rev != 0;
      }
    }
  // commit the winner's assignments
  for (int t = 0; t < n; ++t) {
    int idx = best_rev ? (best_start - t % n + n) % n : (best_start + t) % n;
    if (rename[walk[idx]] < 0) rename[walk[idx]] = next++;
  }
  return best;
}

// Cache key for one component: serialization after applying cheap symmetries
// only. Boundaries and regions are ordered by name-blind patterns, vertices
// renamed in first-occurrence order, then each walk is rotated (and, on
// non-orientable regions, possibly reflected) to its minimal form and the
// boundary/region order re-sorted on the renamed walks. Every step maps the
// component to an equivalent position, so equal keys imply equivalent
// components -- sound as a canonicalization cache key -- and the re-sorting
// collapses most sibling noise before the exact minimizer runs.
std::string cheap_component_key(const std::vector<const FastRegion*>& regs,
                                int nverts) {
  struct RenderedRegion {
    std::string tag;
    std::vector<std::pair<std::vector<int>, bool>> walks;  // renamed, spot
    std::string body;
  };
  // pass 1: name-blind boundary patterns fix a first emission order
  std::vector<std::vector<std::pair<std::string, size_t>>> order(regs.size());
  std::vector<std::pair<std::string, size_t>> region_order(regs.size());
  std::vector<int> local(nverts, -1);
  for (size_t ri = 0; ri < regs.size(); ++ri) {
    const FastRegion& r = *regs[ri];
    order[ri].reserve(r.boundaries.size());
    for (size_t bi = 0; bi < r.boundaries.size(); ++bi) {
      const FastBoundary& b = r.boundaries[bi];
      std::string pat = b.spot ? "*" : "";
      int next = 0;
      for (int v : b.walk) {
        if (local[v] < 0) local[v] = next++;
        pat += static_cast<char>('A' + local[v]);
      }
      for (int v : b.walk) local[v] = -1;
      order[ri].push_back({std::move(pat), bi});
    }
    std::sort(order[ri].begin(), order[ri].end());
    std::string sig = surface_to_string(r.surface);
    for (const auto& [pat, bi] : order[ri]) sig += ',' + pat;
    region_order[ri] = {std::move(sig), ri};
  }
  std::sort(region_order.begin(), region_order.end());

  // pass 2: rename in emission order, minimize each walk, re-sort
  std::vector<int> rename(nverts, -1);
  int next = 0;
  std::vector<RenderedRegion> rendered;
  rendered.reserve(regs.size());
  for (const auto& [sig, ri] : region_order) {
    const FastRegion& r = *regs[ri];
    RenderedRegion rr;
    rr.tag = surface_to_string(r.surface);
    // Reflection is per boundary on non-orientable regions; on orientable
    // ones it applies to all boundaries at once, tried as a second variant.
    const int variants = r.surface.orientable ? 2 : 1;
    std::vector<std::pair<std::vector<int>, bool>> best_walks;
    std::vector<int> best_rename;
    int best_next = 0;
    for (int variant = 0; variant < variants; ++variant) {
      std::vector<int> vrename = rename;
      int vnext = next;
      std::vector<std::pair<std::vector<int>, bool>> walks;
      walks.reserve(order[ri].size());
      for (const auto& [pat, bi] : order[ri]) {
        const FastBoundary& b = r.boundaries[bi];
        std::vector<int> w = b.walk;
        if (variant) std::reverse(w.begin(), w.end());
        walks.emplace_back(
            render_walk_min(w, !r.surface.orientable, vrename, vnext), b.spot);
      }
      if (variant == 0 || walks < best_walks) {
        best_walks = std::move(walks);
        best_rename = std::move(vrename);
        best_next = vnext;
      }
    }
    rr.walks = std::move(best_walks);
    rename = std::move(best_rename);
    next = best_next;
    std::sort(rr.walks.begin(), rr.walks.end());
    for (const auto& [w, spot] : rr.walks) {
      rr.body += ',';
      if (spot) rr.body += '*';
      for (size_t i = 0; i < w.size(); ++i) {
        if (i) rr.body += '.';
        rr.body += 'v' + std::to_string(w[i]);
      }
    }
    rendered.push_back(std::move(rr));
  }
  std::sort(rendered.begin(), rendered.end(),
            [](const RenderedRegion& a, const RenderedRegion& b) {
              return std::tie(a.tag, a.body) < std::tie(b.tag, b.body);
            });
  std::string out;
  for (const RenderedRegion& rr : rendered) {
    if (!out.empty()) out += ';';
    out += rr.tag;
    out += '{';
    if (!rr.body.empty()) out += rr.body.substr(1);
    out += '}';
  }
  return out;
}

// Moves that differ only in the choice among interchangeable boundaries
// (identical spots, identical walks over boundary-private vertices) or in how
// such boundaries are distributed between split parts yield the same
// canonical child; keep one representative so the rest skip the
// apply/simplify/canonicalize pipeline. Moves carrying orientation flips are
// keyed verbatim (no dedup, still sound).
std::vector<Move> deduped_moves(const Position& p) {
  std::map<std::string, int> boundary_count;  // vertex -> #boundaries
  for (const Region& r : p.regions)
    for (const Boundary& b : r.boundaries) {
      std::set<std::string> names(b.walk.begin(), b.walk.end());
      for (const std::string& v : names) ++boundary_count[v];
    }
  auto klass = [&](const Boundary& b) {
    bool local = true;
    for (const std::string& v : b.walk)
      if (boundary_count[v] > 1) {
        local = false;
        break;
      }
    std::string s = b.spot ? "*" : "";
    if (local) {  // name-blind pattern; the names occur nowhere else
      s += "p:";
      std::map<std::string, int> ids;
      for (const std::string& v : b.walk) {
        auto [it, ins] = ids.try_emplace(v, static_cast<int>(ids.size()));
        s += std::to_string(it->second) + ".";
      }
    } else {
      s += "x:";
      for (const std::string& v : b.walk) s += v + ".";
    }
    return s;
  };
  std::vector<std::vector<std::string>> classes(p.regions.size());
  for (size_t ri = 0; ri < p.regions.size(); ++ri)
    for (const Boundary& b : p.regions[ri].boundaries)
      classes[ri].push_back(klass(b));

  std::vector<Move> out;
  std::set<std::string> seen;
  for (Move& m : enumerate_moves(p)) {
    const std::vector<std::string>& cls = classes[m.region];
    std::string key = std::to_string(m.region) + "|" +
                      move_kind_to_string(m.kind) + (m.flip ? "F" : "") + "|" +
                      surface_to_string(m.surfaces.first) + "," +
                      surface_to_string(m.surfaces.second) + "|";
    if (m.orientation != 0) {
      key += "O" + std::to_string(m.orientation) + "b" +
             std::to_string(m.end1.boundary) + "o" +
             std::to_string(m.end1.occurrence) + "o" +
             std::to_string(m.end2.occurrence) + "m" +
             std::to_string(m.distribution);
    } else if (m.kind == MoveKind::I) {
      std::string e1 =
          cls[m.end1.boundary] + "#" + std::to_string(m.end1.occurrence);
      std::string e2 =
          cls[m.end2.boundary] + "#" + std::to_string(m.end2.occurrence);
      if (e2 < e1) std::swap(e1, e2);
      key += e1 + "&" + e2;
    } else {
      key += cls[m.end1.boundary] + "#" + std::to_string(m.end1.occurrence) +
             "#" + std::to_string(m.end2.occurrence) + "|";
      std::vector<std::string> selected;
      int t = 0;
      for (int b = 0; b < static_cast<int>(cls.size()); ++b) {
        if (b == m.end1.boundary) continue;
        if (m.distribution >> t & 1) selected.push_back(cls[b]);
        ++t;
      }
      std::sort(selected.begin(), selected.end());
      for (const std::string& s : selected) key += s + ";";
    }
    if (seen.insert(std::move(key)).second) out.push_back(std::move(m));
  }
  return out;
}

}  // namespace

Solver::Solver(SolverOptions opts)
    : opts_(std::move(opts)), start_(std::chrono::steady_clock::now()) {}

void Solver::check_budget() {
  uint64_t entries;
  {
    if (opts_.threads > 0) {
      std::lock_guard lock(memo_mutex_);
      entries = keys_.size();
    } else {
      entries = keys_.size();
    }
  }
  auto elapsed = std::chrono::steady_clock::now() - start_;
  double seconds = std::chrono::duration<double>(elapsed).count();
  if (entries > opts_.memo_limit || seconds > opts_.time_limit_s) {
    SolveStats s;
    s.memo_entries = entries;
    s.nodes = node_count_.load();
    s.elapsed_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
    throw ResourceLimitError(entries > opts_.memo_limit
                                 ? "memo entry budget exceeded"
                                 : "time budget exceeded",
                             s);
  }
}

int Solver::id_of_canonical(std::string key) {
  auto [it, inserted] =
      key_ids_.try_emplace(std::move(key), static_cast<int>(keys_.size()));
  if (inserted) {
    keys_.push_back(it->first);
    values_.push_back(-1);
  }
  return it->second;
}

int Solver::child_value(const std::string& key, int depth) {
  if (key.empty()) return 0;
  if (!opts_.use_decompose)
    return component_nimber(id_of_canonical(key), depth);
  int value = 0;
  for (const Position& part : decompose(parse_position(key))) {
    std::string k = canonical_form(part, opts_.simplify);
    if (!k.empty()) value ^= component_nimber(id_of_canonical(std::move(k)), depth);
  }
  return value;
}

std::vector<int> Solver::component_keys(const Position& child) {
  // Interned replay of simplify + decompose: same rules as the string-based
  // functions, minus the per-child std::map<std::string> traffic.
  std::unordered_map<std::string, int> ids;
  ids.reserve(64);
  std::vector<FastRegion> regs;
  regs.reserve(child.regions.size());
  std::vector<int> occ;
  std::vector<char> spot_vertex;
  for (const Region& r : child.regions) {
    FastRegion fr;
    fr.surface = r.surface;
    for (const Boundary& b : r.boundaries) {
      FastBoundary fb;
      fb.spot = b.spot;
      fb.walk.reserve(b.walk.size());
      for (const std::string& v : b.walk) {
        auto [it, inserted] = ids.try_emplace(v, static_cast<int>(ids.size()));
        if (inserted) {
          occ.push_back(0);
          spot_vertex.push_back(0);
        }
        fb.walk.push_back(it->second);
        if (b.spot)
          spot_vertex[it->second] = 1;
        else
          ++occ[it->second];
      }
      fr.boundaries.push_back(std::move(fb));
    }
    regs.push_back(std::move(fr));
  }
  const int nverts = static_cast<int>(ids.size());
  std::vector<int> lives(nverts);
  for (int v = 0; v < nverts; ++v)
    lives[v] = spot_vertex[v] ? 3 : 3 - occ[v];

  if (opts_.simplify.strip_dead) {
    for (FastRegion& fr : regs) {
      for (FastBoundary& fb : fr.boundaries)
        std::erase_if(fb.walk, [&](int v) { return lives[v] == 0; });
      std::erase_if(fr.boundaries,
                    [](const FastBoundary& fb) { return fb.walk.empty(); });
    }
  }

  // distinct vertices per region plus per-vertex region membership count
  std::vector<std::vector<int>> reg_verts(regs.size());
  std::vector<int> reg_count(nverts, 0);
  std::vector<int> mark(nverts, -1);
  for (size_t ri = 0; ri < regs.size(); ++ri)
    for (const FastBoundary& fb : regs[ri].boundaries)
      for (int v : fb.walk)
        if (mark[v] != static_cast<int>(ri)) {
          mark[v] = static_cast<int>(ri);
          reg_verts[ri].push_back(v);
          ++reg_count[v];
        }

  std::vector<char> dropped(regs.size(), 0);
  for (size_t ri = 0; ri < regs.size(); ++ri) {
    int sum = 0;
    bool shared = false;
    for (int v : reg_verts[ri]) {
      sum += lives[v];
      if (reg_count[v] > 1) shared = true;
    }
    if (opts_.simplify.strip_dead && !shared && sum <= 1) {
      dropped[ri] = 1;
      continue;
    }
    if (opts_.simplify.small_region_to_sphere && sum <= 3)
      regs[ri].surface = SurfaceKind::sphere();
    else if (opts_.simplify.genus_clamp && regs[ri].surface.orientable)
      regs[ri].surface.genus =
          std::min(regs[ri].surface.genus, std::max(0, sum - 3));
  }

  // union-find on regions joined by shared live vertices
  std::vector<int> parent(regs.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<int> owner(nverts, -1);
  for (size_t ri = 0; ri < regs.size(); ++ri) {
    if (dropped[ri]) continue;
    for (int v : reg_verts[ri]) {
      if (lives[v] < 1) continue;
      if (owner[v] < 0)
        owner[v] = static_cast<int>(ri);
      else
        parent[find(static_cast<int>(ri))] = find(owner[v]);
    }
  }
  std::map<int, std::vector<const FastRegion*>> parts;
  for (size_t ri = 0; ri < regs.size(); ++ri) {
    if (dropped[ri]) continue;
    int root = opts_.use_decompose ? find(static_cast<int>(ri)) : 0;
    parts[root].push_back(&regs[ri]);
  }

  auto rebuild = [](const std::vector<const FastRegion*>& part_regs) {
    Position part;  // rebuilt only on a cache miss; names are arbitrary
    for (const FastRegion* fr : part_regs) {
      Region r;
      r.surface = fr->surface;
      for (const FastBoundary& fb : fr->boundaries) {
        Boundary b;
        b.spot = fb.spot;
        for (int v : fb.walk) b.walk.push_back(std::to_string(v));
        r.boundaries.push_back(std::move(b));
      }
      part.regions.push_back(std::move(r));
    }
    return part;
  };

  std::vector<int> ids_out;
  for (const auto& [root, part_regs] : parts) {
    std::string raw = cheap_component_key(part_regs, nverts);
    int id = -1;
    if (opts_.threads > 0) {
      {
        std::lock_guard lock(memo_mutex_);
        auto it = canon_cache_.find(raw);
        if (it != canon_cache_.end()) id = it->second;
      }
      if (id == -1) {
        std::string key = canonical_form(rebuild(part_regs), opts_.simplify);
        std::lock_guard lock(memo_mutex_);
        id = key.empty() ? -2 : id_of_canonical(std::move(key));
        if (canon_cache_.size() > (1u << 22)) canon_cache_.clear();
        canon_cache_.emplace(std::move(raw), id);
      }
    } else {
      if (canon_cache_.size() > (1u << 22)) canon_cache_.clear();
      auto [it, inserted] = canon_cache_.try_emplace(std::move(raw), -1);
      if (inserted) {
        std::string key = canonical_form(rebuild(part_regs), opts_.simplify);
        it->second = key.empty() ? -2 : id_of_canonical(std::move(key));
      }
      id = it->second;
    }
    if (id >= 0) ids_out.push_back(id);  // -2: canonically empty component
  }
  std::sort(ids_out.begin(), ids_out.end());
  return ids_out;
}

int Solver::component_nimber(int id, int depth) {
  std::string key;
  {
    std::unique_lock<std::mutex> lock(memo_mutex_, std::defer_lock);
    if (opts_.threads > 0) lock.lock();
    if (values_[id] >= 0) return values_[id];
    key = keys_[id];  // copy: recursion may grow keys_
  }
  node_count_.fetch_add(1, std::memory_order_relaxed);
  check_budget();

  Position p = parse_position(key);
  std::set<std::vector<int>> child_sets;
  for (const Move& m : deduped_moves(p))
    child_sets.insert(component_keys(apply_move(p, m)));
  std::set<int> values;

#ifdef _OPENMP
  if (depth == 0 && opts_.threads > 0 && child_sets.size() > 1) {
    std::vector<std::vector<int>> sets(child_sets.begin(), child_sets.end());
    std::vector<int> results(sets.size(), 0);
    std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 1) \
    num_threads(opts_.threads) shared(error)
    for (size_t i = 0; i < sets.size(); ++i) {
      try {
        int v = 0;
        for (int ck : sets[i]) v ^= component_nimber(ck, depth + 1);
        results[i] = v;
      } catch (...) {
#pragma omp critical
        if (!error) error = std::current_exception();
      }
    }
    if (error) std::rethrow_exception(error);
    values.insert(results.begin(), results.end());
  } else
#endif
  {
    for (const std::vector<int>& set : child_sets) {
      int v = 0;
      for (int ck : set) v ^= component_nimber(ck, depth + 1);
      values.insert(v);
    }
  }

  int value = mex(values);
  if (opts_.threads > 0) {
    std::lock_guard lock(memo_mutex_);
    values_[id] = value;
  } else {
    values_[id] = value;
  }
  return value;
}

int Solver::nimber_of_key(const std::string& key) { return child_value(key, 0); }

int Solver::nimber(const Position& p) {
  start_ = std::chrono::steady_clock::now();
  int value = nimber_of_key(canonical_form(p, opts_.simplify));
  auto elapsed = std::chrono::steady_clock::now() - start_;
  stats_.memo_entries = keys_.size();
  stats_.nodes = node_count_.load();
  stats_.elapsed_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
  return value;
}

Player Solver::winner(const Position& p) {
  return nimber(p) != 0 ? Player::First : Player::Second;
}

std::vector<std::pair<Move, std::string>> Solver::winning_moves(
    const Position& p) {
  std::vector<std::pair<Move, std::string>> out;
  for (const Move& m : enumerate_moves(p)) {
    Position child = apply_move(p, m);
    std::string key = canonical_form(child, opts_.simplify);
    if (nimber(child) == 0) out.emplace_back(m, key);
  }
  return out;
}

GameTreeForest::GameTreeForest(SimplifyOptions opts) : opts_(opts) {}

int GameTreeForest::intern(std::vector<int> children) {
  std::sort(children.begin(), children.end());
  children.erase(std::unique(children.begin(), children.end()),
                 children.end());
  auto it = intern_.find(children);
  if (it != intern_.end()) return it->second;
  int id = static_cast<int>(nodes_.size());
  int h = 0;
  for (int c : children) h = std::max(h, heights_[c] + 1);
  nodes_.push_back(children);
  heights_.push_back(h);
  intern_.emplace(std::move(children), id);
  return id;
}

int GameTreeForest::leaf_id() { return intern({}); }

int GameTreeForest::build(const std::string& key, int depth, bool& truncated) {
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  std::set<std::string> child_keys =
      key.empty() ? std::set<std::string>{} : children(parse_position(key), opts_);
  if (child_keys.empty()) {
    int id = leaf_id();
    memo_.emplace(key, id);
    return id;
  }
  if (depth <= 0) {
    truncated = true;
    return leaf_id();  // not memoized: an exact value may still be needed
  }
  std::vector<int> kids;
  for (const std::string& ck : child_keys)
    kids.push_back(build(ck, depth - 1, truncated));
  int id = intern(std::move(kids));
  if (!truncated) memo_.emplace(key, id);
  return id;
}

GameTreeForest::Result GameTreeForest::game_tree(const Position& p,
                                                 int depth_limit) {
  Result res;
  res.id = build(canonical_form(p, opts_), depth_limit, res.truncated);
  return res;
}

boost::multiprecision::cpp_int count_canonical_trees(int h) {
  if (h < 0) throw std::invalid_argument("height must be nonnegative");
  if (h >= 6)
    throw std::overflow_error("tower of height " + std::to_string(h) +
                              " does not fit in memory");
  boost::multiprecision::cpp_int count = 1;  // 2^0
  for (int i = 1; i <= h; ++i)
    count = boost::multiprecision::cpp_int(1)
            << static_cast<unsigned>(count.convert_to<uint64_t>());
  return count;
}

std::vector<std::string> enumerate_canonical_trees(int h) {
  if (h < 0) throw std::invalid_argument("height must be nonnegative");
  if (h > 3) throw std::overflow_error("enumeration practical for h <= 3 only");
  std::vector<std::string> trees{"{}"};
  for (int level = 1; level <= h; ++level) {
    std::vector<std::string> next;
    const size_t n = trees.size();
    for (size_t subset = 0; subset < (size_t{1} << n); ++subset) {
      std::string t = "{";
      for (size_t i = 0; i < n; ++i)
        if (subset >> i & 1) t += trees[i];
      t += "}";
      next.push_back(std::move(t));
    }
    trees = std::move(next);
  }
  return trees;
}

// ---------------------------------------------------------------------------
// Limit genus bound: recursion over an abstract region (walks plus per-vertex
// lives), considering only the orientable move set.

namespace {

struct AbstractRegion {
  std::vector<std::vector<std::string>> walks;
  std::map<std::string, int> lives;
};

void strip_dead(AbstractRegion& ar) {
  for (auto& w : ar.walks)
    std::erase_if(w, [&](const std::string& v) { return ar.lives[v] <= 0; });
  std::erase_if(ar.walks, [](const auto& w) { return w.empty(); });
  std::set<std::string> present;
  for (const auto& w : ar.walks) present.insert(w.begin(), w.end());
  std::erase_if(ar.lives,
                [&](const auto& kv) { return !present.count(kv.first); });
}

int lives_total(const AbstractRegion& ar) {
  int sum = 0;
  for (const auto& [v, l] : ar.lives) sum += l;
  return sum;
}

std::string serialize(const AbstractRegion& ar) {
  std::vector<std::string> parts;
  for (const auto& w : ar.walks) {
    std::string s;
    for (const auto& v : w) s += v + ".";
    parts.push_back(std::move(s));
  }
  std::sort(parts.begin(), parts.end());
  std::string out;
  for (const auto& s : parts) out += s + "|";
  for (const auto& [v, l] : ar.lives) out += v + ":" + std::to_string(l) + ",";
  return out;
}

struct GenusContext {
  std::map<std::string, int> memo;
  uint64_t nodes = 0;
  uint64_t node_limit = 0;
  int fresh = 0;

  std::string fresh_name() { return "c" + std::to_string(fresh++); }
};

int bound_of(AbstractRegion ar, GenusContext& ctx, LimitGenusReport* report);

bool alive_pair(const AbstractRegion& ar, const std::string& v1,
                const std::string& v2) {
  if (v1 == v2) return ar.lives.at(v1) >= 2;
  return ar.lives.at(v1) >= 1 && ar.lives.at(v2) >= 1;
}

AbstractRegion with_consumed(const AbstractRegion& ar, const std::string& v1,
                             const std::string& v2, const std::string& c) {
  AbstractRegion out = ar;
  out.lives[v1] -= 1;
  out.lives[v2] -= 1;
  out.lives[c] = 1;
  return out;
}

int bound_of(AbstractRegion ar, GenusContext& ctx, LimitGenusReport* report) {
  strip_dead(ar);
  if (lives_total(ar) <= 3) return 0;
  std::string key = serialize(ar);
  if (!report) {
    auto it = ctx.memo.find(key);
    if (it != ctx.memo.end()) return it->second;
  }
  if (++ctx.nodes > ctx.node_limit)
    throw ResourceLimitError("limit-genus recursion budget exceeded", {});

  std::vector<int> kind_i, kind_iib1a, kind_iiaa, outside;
  const std::string c = ctx.fresh_name();

  // kind I between two walks
  for (size_t x = 0; x < ar.walks.size(); ++x)
    for (size_t y = x + 1; y < ar.walks.size(); ++y)
      for (size_t i = 0; i < ar.walks[x].size(); ++i)
        for (size_t j = 0; j < ar.walks[y].size(); ++j) {
          if (!alive_pair(ar, ar.walks[x][i], ar.walks[y][j])) continue;
          Boundary merged = merge_boundaries(
              Boundary{ar.walks[x]}, static_cast<int>(i),
              Boundary{ar.walks[y]}, static_cast<int>(j), false, c);
          AbstractRegion child =
              with_consumed(ar, ar.walks[x][i], ar.walks[y][j], c);
          child.walks.clear();
          child.walks.push_back(merged.walk);
          for (size_t t = 0; t < ar.walks.size(); ++t)
            if (t != x && t != y) child.walks.push_back(ar.walks[t]);
          kind_i.push_back(bound_of(std::move(child), ctx, nullptr));
        }

  // self-links on one walk: kind II.A.(a) splits and kind II.B.1.(a)
  for (size_t x = 0; x < ar.walks.size(); ++x) {
    for (size_t i = 0; i < ar.walks[x].size(); ++i)
      for (size_t j = i; j < ar.walks[x].size(); ++j) {
        if (!alive_pair(ar, ar.walks[x][i], ar.walks[x][j])) continue;
        auto [piece1, piece2] =
            split_boundary(Boundary{ar.walks[x]}, static_cast<int>(i),
                           static_cast<int>(j), false, c);
        AbstractRegion base =
            with_consumed(ar, ar.walks[x][i], ar.walks[x][j], c);

        // II.B.1.(a): both pieces stay in the region, genus drops by one
        AbstractRegion broken = base;
        broken.walks.clear();
        broken.walks.push_back(piece1.walk);
        broken.walks.push_back(piece2.walk);
        for (size_t t = 0; t < ar.walks.size(); ++t)
          if (t != x) broken.walks.push_back(ar.walks[t]);
        kind_iib1a.push_back(bound_of(std::move(broken), ctx, nullptr) + 1);

        // II.A.(a): the region splits, each distribution of the others
        std::vector<size_t> others;
        for (size_t t = 0; t < ar.walks.size(); ++t)
          if (t != x) others.push_back(t);
        for (uint64_t mask = 0; mask < (uint64_t{1} << others.size());
             ++mask) {
          AbstractRegion part1 = base, part2 = base;
          part1.walks.clear();
          part2.walks.clear();
          part1.walks.push_back(piece1.walk);
          part2.walks.push_back(piece2.walk);
          for (size_t t = 0; t < others.size(); ++t)
            (mask >> t & 1 ? part1 : part2).walks.push_back(
                ar.walks[others[t]]);
          kind_iiaa.push_back(bound_of(std::move(part1), ctx, nullptr) +
                              bound_of(std::move(part2), ctx, nullptr));
        }
      }
  }

  // moves outside: every way of killing one or two lives on the boundary
  {
    std::vector<std::string> names;
    for (const auto& [v, l] : ar.lives) names.push_back(v);
    for (size_t a = 0; a < names.size(); ++a) {
      if (ar.lives[names[a]] >= 1) {
        AbstractRegion child = ar;
        child.lives[names[a]] -= 1;
        outside.push_back(bound_of(std::move(child), ctx, nullptr));
      }
      for (size_t b = a; b < names.size(); ++b) {
        int need_a = a == b ? 2 : 1;
        if (ar.lives[names[a]] < need_a || ar.lives[names[b]] < 1) continue;
        AbstractRegion child = ar;
        child.lives[names[a]] -= 1;
        child.lives[names[b]] -= 1;
        outside.push_back(bound_of(std::move(child), ctx, nullptr));
      }
    }
  }

  int bound = 0;
  for (int v : kind_i) bound = std::max(bound, v);
  for (int v : kind_iib1a) bound = std::max(bound, v);
  for (int v : kind_iiaa) bound = std::max(bound, v);
  for (int v : outside) bound = std::max(bound, v);

  if (report) {
    report->kind_i = std::move(kind_i);
    report->kind_iib1a = std::move(kind_iib1a);
    report->kind_iiaa = std::move(kind_iiaa);
    report->outside_kills = std::move(outside);
  } else {
    ctx.memo.emplace(std::move(key), bound);
  }
  return bound;
}

}  // namespace

LimitGenusReport limit_genus_bound(const Position& p, int region,
                                   const SolverOptions& opts) {
  if (region < 0 || region >= static_cast<int>(p.regions.size()))
    throw std::out_of_range("region index " + std::to_string(region));
  if (!p.regions[region].surface.orientable)
    throw std::invalid_argument("limit-genus bound applies to orientable "
                                "regions");
  AbstractRegion ar;
  for (const Boundary& b : p.regions[region].boundaries)
    ar.walks.push_back(b.walk);
  for (const std::string& v : vertex_names(p))
    ar.lives[v] = lives_of(p, v);
  std::set<std::string> present;
  for (const auto& w : ar.walks) present.insert(w.begin(), w.end());
  std::erase_if(ar.lives,
                [&](const auto& kv) { return !present.count(kv.first); });

  GenusContext ctx;
  ctx.node_limit = opts.memo_limit;
  LimitGenusReport report;
  report.region = region;
  report.bound = bound_of(std::move(ar), ctx, &report);
  return report;
}

NimberTable solve_table(const std::vector<int>& spots,
                        const std::vector<SurfaceKind>& surfaces,
                        const SolverOptions& per_cell_opts) {
  NimberTable table;
  table.spots = spots;
  table.surfaces = surfaces;
  for (const SurfaceKind& s : surfaces) {
    std::vector<TableCell> row;
    for (int p : spots) {
      TableCell cell;
      Position pos = initial_position(p, s);
      try {
        Solver solver(per_cell_opts);
        cell.nimber = solver.nimber(pos);
        cell.status = CellStatus::Solved;
      } catch (const ResourceLimitError&) {
        // Salvage a lower bound: the mex over any subset of solved children
        // never exceeds the true mex.
        std::set<int> child_values;
        bool any = false;
        SolverOptions child_opts = per_cell_opts;
        child_opts.time_limit_s = per_cell_opts.time_limit_s / 10.0;
        for (const Move& m : enumerate_moves(pos)) {
          try {
            Solver child_solver(child_opts);
            child_values.insert(child_solver.nimber(apply_move(pos, m)));
            any = true;
          } catch (const ResourceLimitError&) {
          }
        }
        int bound = any ? mex(child_values) : 0;
        if (bound > 0) {
          cell.lower_bound = bound;
          cell.status = CellStatus::LowerBound;
        } else {
          cell.status = CellStatus::Unknown;  // "nimber >= 0" says nothing
        }
      }
      row.push_back(cell);
    }
    table.cells.push_back(std::move(row));
  }
  return table;
}

}  // namespace sprouts
