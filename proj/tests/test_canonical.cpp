#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <queue>
#include <random>
#include <set>

#include "sprouts/canonical.hpp"
#include "sprouts/moves.hpp"
#include "sprouts/position.hpp"

using namespace sprouts;

TEST_CASE("simplify strips dead vertices") {
  Position p = parse_position("S{a.d.b.d.e};S{a.d.e,*c}");
  Position s = simplify(p);
  for (const Region& r : s.regions)
    for (const Boundary& b : r.boundaries)
      for (const std::string& v : b.walk) CHECK(v != "d");
  CHECK(total_lives(s) == total_lives(p));
}

TEST_CASE("simplify normalizes small-region surfaces") {
  Position p = parse_position("T5{x.x.y.y}");  // 2 lives
  CHECK(serialize_position(simplify(p)) == "S{x.x.y.y}");
  CHECK(simplify(parse_position("S{a.a.a.b.b.b}")).regions.empty());

  // 1-life region kept when its only life is spendable in the other region
  Position shared = parse_position("S{a.x.x.x};S{a.b}");
  Position s = simplify(shared);
  CHECK(s.regions.size() == 2);
  int count = 0;
  for (const Region& r : s.regions)
    for (const Boundary& b : r.boundaries)
      for (const std::string& v : b.walk)
        if (v == "a") ++count;
  CHECK(count == 2);
}

TEST_CASE("canonical names and ordering") {
  CHECK(canonical_form(parse_position("S{*b,*a}")) == "S{*v0,*v1}");
  CHECK(canonical_form(parse_position("T1{*z,*q,*m}")) == "T1{*v0,*v1,*v2}");
}

TEST_CASE("canonical form is a fixed point") {
  const char* samples[] = {
      "S{*a}",
      "S{a.n.b.n,*c}",
      "P1{a.n.a.n,x.y.z}",
      "T1{a.b.c.a.b.c}",
      "P2{a.b,c.d};S{a.c,*e}",
  };
  for (const char* s : samples) {
    std::string key = canonical_form(parse_position(s));
    CHECK(canonical_form(parse_position(key)) == key);
  }
}

TEST_CASE("non-orientable boundaries reflect independently") {
  std::string k1 = canonical_form(parse_position("P2{a.b.c,x.y}"));
  CHECK(canonical_form(parse_position("P2{a.c.b,x.y}")) == k1);
  CHECK(canonical_form(parse_position("P2{a.b.c,y.x}")) == k1);
}

TEST_CASE("rotations never matter") {
  SimplifyOptions keep{true, false, false};  // keep the torus tag visible
  std::string k = canonical_form(parse_position("T1{a.b.c.a.b.c}"), keep);
  CHECK(canonical_form(parse_position("T1{b.c.a.b.c.a}"), keep) == k);
  CHECK(canonical_form(parse_position("T1{c.a.b.c.a.b}"), keep) == k);
}

TEST_CASE("orientable regions reflect all boundaries at once") {
  SimplifyOptions keep{true, false, false};
  std::string k = canonical_form(parse_position("T1{a.b.c,a.c.b}"), keep);
  // reflecting both walks is the mirror image
  CHECK(canonical_form(parse_position("T1{c.b.a,b.c.a}"), keep) == k);
}

namespace {

Position random_symmetry(const Position& p, std::mt19937& rng) {
  Position q = p;
  // rename vertices
  std::map<std::string, std::string> rename;
  int next = 0;
  std::vector<std::string> names = vertex_names(p);
  std::shuffle(names.begin(), names.end(), rng);
  for (const std::string& v : names)
    rename[v] = "x" + std::to_string(next++);
  for (Region& r : q.regions)
    for (Boundary& b : r.boundaries)
      for (std::string& v : b.walk) v = rename[v];
  // rotate walks
  for (Region& r : q.regions)
    for (Boundary& b : r.boundaries)
      if (!b.spot && b.walk.size() > 1)
        std::rotate(b.walk.begin(), b.walk.begin() + rng() % b.walk.size(),
                    b.walk.end());
  // reflections: per boundary in non-orientable regions, all-or-nothing in
  // orientable ones
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
  // permute boundaries and regions
  for (Region& r : q.regions)
    std::shuffle(r.boundaries.begin(), r.boundaries.end(), rng);
  std::shuffle(q.regions.begin(), q.regions.end(), rng);
  return q;
}

}  // namespace

TEST_CASE("symmetry invariance") {
  std::mt19937 rng(4242);
  const char* samples[] = {
      "S{a.n.b.n,*c}",
      "P1{a.n.a.n,x.y.z}",
      "T1{a.b.c.a.b.c};S{a.b,*d}",
      "P2{a.b.c,x.y};T2{x.c}",
  };
  for (const char* s : samples) {
    Position p = parse_position(s);
    std::string key = canonical_form(p);
    for (int t = 0; t < 50; ++t)
      CHECK(canonical_form(random_symmetry(p, rng)) == key);
  }
}

TEST_CASE("children commute with canonicalization") {
  // all positions reachable from 2 spots on S and P1 (T1 runs in the larger
  // acceptance suite)
  for (const SurfaceKind& s :
       {SurfaceKind::sphere(), SurfaceKind::projective(1)}) {
    std::set<std::string> seen;
    std::queue<std::string> todo;
    std::string root = canonical_form(initial_position(2, s));
    seen.insert(root);
    todo.push(root);
    while (!todo.empty()) {
      Position p = parse_position(todo.front());
      todo.pop();
      std::set<std::string> via_canon = children(p);
      // recompute from a scrambled but equivalent position
      std::mt19937 rng(std::hash<std::string>{}(serialize_position(p)));
      std::set<std::string> via_raw = children(random_symmetry(p, rng));
      CHECK(via_canon == via_raw);
      for (const std::string& k : via_canon)
        if (!k.empty() && seen.insert(k).second) todo.push(k);
    }
    CHECK(seen.size() > 1);
  }
}

TEST_CASE("decompose") {
  CHECK(decompose(parse_position("S{*a};S{*b}")).size() == 2);
  CHECK(decompose(parse_position("S{a.n};S{a.n}")).size() == 1);

  // two regions joined only through a dead vertex fall apart after simplify
  Position p = simplify(parse_position("S{a.a.x};S{a.y}"));
  auto parts = decompose(p);
  CHECK(parts.size() == 2);

  int lives = 0;
  for (const Position& part : parts) lives += total_lives(part);
  CHECK(lives == total_lives(p));

  // never splits a live shared vertex
  for (const auto& text : {"P1{a.b};S{b.c};S{c.d}", "T1{a.n.b.n}"}) {
    Position q = simplify(parse_position(text));
    CHECK(decompose(q).size() == 1);
  }
}
