// Acceptance suite: one pass/fail line per criterion, exit 1 on any failure.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <map>
#include <queue>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "sprouts/canonical.hpp"
#include "sprouts/moves.hpp"
#include "sprouts/position.hpp"
#include "sprouts/solver.hpp"

using namespace sprouts;

namespace {

int failures = 0;

struct Timer {
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start)
        .count();
  }
};

void report(int criterion, bool ok, double elapsed_s, double budget_s,
            const std::string& detail) {
  bool in_budget = budget_s <= 0 || elapsed_s <= budget_s;
  if (!ok || !in_budget) ++failures;
  std::printf("criterion %2d: %s (%.1fs", criterion,
              ok && in_budget ? "PASS" : "FAIL", elapsed_s);
  if (budget_s > 0) std::printf(" / budget %.0fs", budget_s);
  std::printf(") %s%s\n", detail.c_str(),
              ok && !in_budget ? " [values correct, over budget]" : "");
  std::fflush(stdout);
}

SolverOptions roomy() {
  SolverOptions o;
  o.time_limit_s = 3600;
  o.memo_limit = 50'000'000;
  return o;
}

std::string row_to_string(const std::vector<int>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i)
    s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

void nimber_row(int criterion, const SurfaceKind& surface, int p_from,
                int p_to, const std::vector<int>& expected, double budget_s) {
  Timer t;
  std::vector<int> got;
  bool ok = true;
  try {
    for (int p = p_from; p <= p_to; ++p) {
      Solver s(roomy());
      got.push_back(s.nimber(initial_position(p, surface)));
    }
    ok = got == expected;
  } catch (const std::exception&) {
    ok = false;
  }
  report(criterion, ok, t.seconds(), budget_s,
         surface_to_string(surface) + " p=" + std::to_string(p_from) + ".." +
             std::to_string(p_to) + " nimbers " + row_to_string(got) +
             " (want " + row_to_string(expected) + ")");
}

std::set<std::string> reachable_from(const Position& start) {
  std::set<std::string> seen;
  std::queue<std::string> todo;
  std::string root = canonical_form(start);
  seen.insert(root);
  todo.push(root);
  while (!todo.empty()) {
    Position p = parse_position(todo.front());
    todo.pop();
    for (const std::string& k : children(p))
      if (!k.empty() && seen.insert(k).second) todo.push(k);
  }
  return seen;
}

int brute_nimber(const Position& p, std::map<std::string, int>& memo) {
  std::string key = serialize_position(p);
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  std::set<int> child_values;
  for (const Move& m : enumerate_moves(p))
    child_values.insert(brute_nimber(apply_move(p, m), memo));
  int mex = 0;
  while (child_values.count(mex)) ++mex;
  memo[key] = mex;
  return mex;
}

// --- criterion 6 ---

void criterion_census() {
  Timer t;
  bool ok = count_canonical_trees(0) == 1 && count_canonical_trees(1) == 2 &&
            count_canonical_trees(2) == 4 && count_canonical_trees(3) == 16 &&
            count_canonical_trees(4) == 65536;
  report(6, ok, t.seconds(), 0, "canonical tree census 1,2,4,16,65536");
}

// --- criterion 7 ---

void criterion_winning_move() {
  Timer t;
  bool ok = false;
  try {
    Solver s(roomy());
    for (const auto& [m, key] :
         s.winning_moves(initial_position(2, SurfaceKind::projective(1))))
      if (m.kind == MoveKind::IIB2b) ok = true;
  } catch (const std::exception&) {
  }
  report(7, ok, t.seconds(), 300,
         "2 spots on P1 have a winning move of kind II.B.2.(b)");
}

// --- criterion 8 ---

bool move_bookkeeping_ok(const Position& p, const Move& m,
                         const Position& child) {
  const Region& r = p.regions[m.region];
  if (child.regions.size() < p.regions.size()) return false;
  if (total_lives(child) != total_lives(p) - 1) return false;
  if (lives_of(child, m.new_vertex) != 1) return false;
  if (!validate(child).empty()) return false;

  int chi = euler_characteristic(r.surface);
  switch (m.kind) {
    case MoveKind::I:
      if (child.regions[m.region].surface != r.surface) return false;
      break;
    case MoveKind::IIAa:
    case MoveKind::IIAb:
    case MoveKind::IIAc:
      if (euler_characteristic(m.surfaces.first) +
              euler_characteristic(m.surfaces.second) !=
          chi + 2)
        return false;
      if (child.regions.size() != p.regions.size() + 1) return false;
      break;
    case MoveKind::IIB1a:
    case MoveKind::IIB1b:
    case MoveKind::IIB1c:
      if (euler_characteristic(m.surfaces.first) != chi + 2) return false;
      break;
    case MoveKind::IIB2a:
    case MoveKind::IIB2b:
      if (euler_characteristic(m.surfaces.first) != chi + 1) return false;
      break;
  }
  if (r.surface.orientable) {
    if (!m.surfaces.first.orientable || !m.surfaces.second.orientable)
      return false;
    if (r.surface == SurfaceKind::sphere() && m.kind != MoveKind::I &&
        m.kind != MoveKind::IIAa)
      return false;
  }
  return true;
}

void criterion_move_properties() {
  Timer t;
  std::mt19937 rng(20240817);
  std::vector<SurfaceKind> surfaces{
      SurfaceKind::sphere(),        SurfaceKind::torus(1),
      SurfaceKind::torus(2),        SurfaceKind::projective(1),
      SurfaceKind::projective(2),
  };
  long checked = 0, violations = 0;
  while (checked < 10000) {
    int p = 1 + rng() % 4;
    const SurfaceKind& s = surfaces[rng() % surfaces.size()];
    Position pos = initial_position(p, s);
    int steps = 0;
    for (;;) {
      auto moves = enumerate_moves(pos);
      if (moves.empty()) break;
      // check the move to play plus a couple of random alternatives
      std::vector<int> picks{static_cast<int>(rng() % moves.size())};
      for (int k = 0; k < 2; ++k) picks.push_back(rng() % moves.size());
      for (int idx : picks) {
        Position child = apply_move(pos, moves[idx]);
        if (!move_bookkeeping_ok(pos, moves[idx], child)) ++violations;
        ++checked;
      }
      pos = apply_move(pos, moves[picks[0]]);
      if (++steps > 3 * p - 1) {
        ++violations;  // playout overran the game-length bound
        break;
      }
    }
  }
  report(8, violations == 0, t.seconds(), 0,
         std::to_string(checked) + " random moves checked, " +
             std::to_string(violations) + " violations");
}

// --- criterion 9 ---

Position random_symmetry(const Position& p, std::mt19937& rng) {
  Position q = p;
  std::map<std::string, std::string> rename;
  int next = 0;
  std::vector<std::string> names = vertex_names(p);
  std::shuffle(names.begin(), names.end(), rng);
  for (const std::string& v : names) rename[v] = "x" + std::to_string(next++);
  for (Region& r : q.regions)
    for (Boundary& b : r.boundaries)
      for (std::string& v : b.walk) v = rename[v];
  for (Region& r : q.regions)
    for (Boundary& b : r.boundaries)
      if (!b.spot && b.walk.size() > 1)
        std::rotate(b.walk.begin(), b.walk.begin() + rng() % b.walk.size(),
                    b.walk.end());
  for (Region& r : q.regions) {
    if (r.surface.orientable) {
      if (rng() % 2)
        for (Boundary& b : r.boundaries)
          std::reverse(b.walk.begin(), b.walk.end());
    } else {
      for (Boundary& b : r.boundaries)
        if (rng() % 2) std::reverse(b.walk.begin(), b.walk.end());
    }
  }
  for (Region& r : q.regions)
    std::shuffle(r.boundaries.begin(), r.boundaries.end(), rng);
  std::shuffle(q.regions.begin(), q.regions.end(), rng);
  return q;
}

void criterion_canonicalization() {
  Timer t;
  std::mt19937 rng(5150);
  long violations = 0;

  std::vector<std::set<std::string>> reach;
  for (const SurfaceKind& s : {SurfaceKind::sphere(),
                               SurfaceKind::projective(1),
                               SurfaceKind::torus(1)})
    reach.push_back(reachable_from(initial_position(2, s)));

  // pool of sample keys for idempotence and symmetry invariance
  std::vector<std::string> pool;
  for (const auto& set : reach)
    for (const std::string& k : set) pool.push_back(k);

  long symmetry_checks = 0;
  while (symmetry_checks < 1000) {
    const std::string& key = pool[rng() % pool.size()];
    Position p = parse_position(key);
    if (canonical_form(p) != key) ++violations;  // idempotence
    if (canonical_form(random_symmetry(p, rng)) != key) ++violations;
    ++symmetry_checks;
  }

  // children-commutation on every reachable position
  long commutation_checks = 0;
  for (const auto& set : reach)
    for (const std::string& k : set) {
      Position p = parse_position(k);
      std::mt19937 r2(std::hash<std::string>{}(k));
      if (children(p) != children(random_symmetry(p, r2))) ++violations;
      ++commutation_checks;
    }

  report(9, violations == 0, t.seconds(), 1800,
         std::to_string(symmetry_checks) + " symmetry checks, " +
             std::to_string(commutation_checks) +
             " commutation checks, " + std::to_string(violations) +
             " violations");
}

// --- criterion 10 ---

void criterion_oracle() {
  Timer t;
  long mismatches = 0, checked = 0;
  for (const SurfaceKind& s :
       {SurfaceKind::projective(1), SurfaceKind::sphere()}) {
    Solver solver(roomy());
    std::map<std::string, int> memo;
    for (const std::string& key : reachable_from(initial_position(2, s))) {
      Position p = parse_position(key);
      if (solver.nimber(p) != brute_nimber(p, memo)) ++mismatches;
      ++checked;
    }
  }
  report(10, mismatches == 0, t.seconds(), 0,
         std::to_string(checked) + " reachable positions vs. brute force, " +
             std::to_string(mismatches) + " mismatches");
}

// --- criterion 11 ---

void criterion_surface_swap() {
  Timer t;
  std::mt19937 rng(31337);
  std::vector<SurfaceKind> starts{SurfaceKind::sphere(), SurfaceKind::torus(1),
                                  SurfaceKind::projective(1),
                                  SurfaceKind::projective(2)};
  std::vector<SurfaceKind> swaps{SurfaceKind::sphere(), SurfaceKind::torus(1),
                                 SurfaceKind::projective(1),
                                 SurfaceKind::projective(2)};
  // keep surfaces visible so the swap is not erased before solving
  SolverOptions opts = roomy();
  opts.simplify.small_region_to_sphere = false;

  std::set<std::string> sampled;
  long violations = 0;
  while (sampled.size() < 50) {
    int p = 2 + rng() % 2;
    Position pos = initial_position(p, starts[rng() % starts.size()]);
    int steps = rng() % (3 * p - 1);
    for (int k = 0; k < steps; ++k) {
      auto moves = enumerate_moves(pos);
      if (moves.empty()) break;
      pos = apply_move(pos, moves[rng() % moves.size()]);
    }
    // find a region with <= 3 lives
    std::vector<int> small;
    for (int ri = 0; ri < static_cast<int>(pos.regions.size()); ++ri)
      if (region_lives(pos, ri) <= 3 && !pos.regions[ri].boundaries.empty())
        small.push_back(ri);
    if (small.empty()) continue;
    int ri = small[rng() % small.size()];
    if (!sampled.insert(serialize_position(pos) + "#" + std::to_string(ri))
             .second)
      continue;

    std::set<int> nimbers;
    for (const SurfaceKind& s : swaps) {
      Position variant = pos;
      variant.regions[ri].surface = s;
      Solver solver(opts);
      nimbers.insert(solver.nimber(variant));
    }
    if (nimbers.size() != 1) ++violations;
  }
  report(11, violations == 0, t.seconds(), 0,
         std::to_string(sampled.size()) +
             " sampled small-region positions swapped among {S,T1,P1,P2}, " +
             std::to_string(violations) + " violations");
}

}  // namespace

int main() {
  nimber_row(1, SurfaceKind::sphere(), 1, 6, {0, 0, 1, 1, 1, 0}, 600);
  nimber_row(2, SurfaceKind::projective(1), 2, 5, {1, 1, 1, 0}, 900);
  nimber_row(3, SurfaceKind::torus(1), 2, 3, {0, 1}, 900);
  nimber_row(4, SurfaceKind::projective(2), 2, 3, {1, 1}, 900);
  {
    // T^n, p=2, n=0,1,2
    Timer t;
    std::vector<int> got;
    bool ok = true;
    try {
      for (int n = 0; n <= 2; ++n) {
        Solver s(roomy());
        got.push_back(s.nimber(initial_position(2, SurfaceKind::torus(n))));
      }
      ok = got == std::vector<int>{0, 0, 0};
    } catch (const std::exception&) {
      ok = false;
    }
    report(5, ok, t.seconds(), 900,
           "T^n p=2 n=0..2 nimbers " + row_to_string(got) + " (want 0,0,0)");
  }
  criterion_census();
  criterion_winning_move();
  criterion_move_properties();
  criterion_canonicalization();
  criterion_oracle();
  criterion_surface_swap();
  return failures == 0 ? 0 : 1;
}
