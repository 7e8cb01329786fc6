#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "sprouts/position.hpp"

using namespace sprouts;

TEST_CASE("parse and serialize round-trip") {
  const char* samples[] = {
      "S{*a}",
      "S{a.d.b.d.e};S{a.d.e,*c}",
      "T1{*v0,*v1}",
      "P2{a.n.a.n}",
      "S{a.b,x.y.z};T2{a.b}",
  };
  for (const char* s : samples) {
    Position p = parse_position(s);
    CHECK(serialize_position(p) == s);
    CHECK(parse_position(serialize_position(p)) == p);
  }
}

TEST_CASE("whitespace is ignored on input") {
  Position p = parse_position("  S { *a , b . c }\n; T1 { b . c }");
  CHECK(serialize_position(p) == "S{*a,b.c};T1{b.c}");
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(parse_position(""), ParseError);
  CHECK_THROWS_AS(parse_position("S{a.}"), ParseError);
  CHECK_THROWS_AS(parse_position("S{a"), ParseError);
  CHECK_THROWS_AS(parse_position("Q1{a}"), ParseError);
  CHECK_THROWS_AS(parse_position("P0{a}"), ParseError);
  CHECK_THROWS_AS(parse_position("S{*a.b}"), ParseError);   // spot not alone
  CHECK_THROWS_AS(parse_position("S{*a,a.b}"), ParseError); // spot reused
  CHECK_THROWS_AS(parse_position("S{a.a.a.a}"), ParseError); // degree 4
  CHECK_THROWS_AS(parse_position("S{a}x"), ParseError);     // trailing input

  try {
    parse_position("Z9{a}");
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.kind == ViolationKind::BadSurfaceTag);
  }
}

TEST_CASE("degrees and lives") {
  Position p = parse_position("S{a.d.b.d.e};S{a.d.e,*c}");
  CHECK(degree_of(p, "a") == 2);
  CHECK(degree_of(p, "d") == 3);
  CHECK(degree_of(p, "b") == 1);
  CHECK(degree_of(p, "e") == 2);
  CHECK(degree_of(p, "c") == 0);  // spot
  CHECK(lives_of(p, "a") == 1);
  CHECK(lives_of(p, "d") == 0);
  CHECK(lives_of(p, "c") == 3);
  CHECK_THROWS_AS(degree_of(p, "zz"), std::out_of_range);

  auto lives = lives_map(p);
  for (const std::string& v : vertex_names(p)) CHECK(lives.at(v) == lives_of(p, v));
}

TEST_CASE("region lives") {
  Position p = parse_position("S{a.d.b.d.e};S{a.d.e,*c}");
  CHECK(region_lives(p, 0) == 4);  // a=1, d=0, b=2, e=1
  CHECK(region_lives(p, 1) == 5);  // a=1, d=0, e=1, c=3
  CHECK_THROWS_AS(region_lives(p, 2), std::out_of_range);

  Position dead = parse_position("S{a.a.a.b.b.b}");
  CHECK(region_lives(dead, 0) == 0);
}

TEST_CASE("initial position") {
  Position p = initial_position(3, SurfaceKind::torus(1));
  CHECK(serialize_position(p) == "T1{*v0,*v1,*v2}");
  for (int n = 1; n <= 6; ++n) {
    CHECK(total_lives(initial_position(n, SurfaceKind::sphere())) == 3 * n);
    CHECK(total_lives(initial_position(n, SurfaceKind::projective(2))) == 3 * n);
  }
}

TEST_CASE("unstarred singleton is a degree-1 vertex") {
  Position p = parse_position("S{v2};S{v2.n0}");
  CHECK(degree_of(p, "v2") == 2);
  Position q = parse_position("S{x}");
  CHECK(degree_of(q, "x") == 1);
  CHECK(lives_of(q, "x") == 2);
}

TEST_CASE("lives identity over random valid positions") {
  // Build random positions by scattering occurrences (each vertex <= 3 plain
  // occurrences or a lone spot), then check sum-of-lives bookkeeping and the
  // serialize round-trip.
  std::mt19937 rng(12345);
  for (int iter = 0; iter < 200; ++iter) {
    Position p;
    int regions = 1 + rng() % 3;
    int vcount = 2 + rng() % 6;
    std::vector<int> quota(vcount, 3);
    std::vector<bool> spot_used(vcount, false);
    for (int r = 0; r < regions; ++r) {
      Region reg;
      int tag = rng() % 4;
      reg.surface = tag == 0   ? SurfaceKind::sphere()
                    : tag == 1 ? SurfaceKind::torus(1 + rng() % 2)
                    : tag == 2 ? SurfaceKind::projective(1 + rng() % 2)
                               : SurfaceKind::sphere();
      int bcount = rng() % 3;
      for (int b = 0; b < bcount; ++b) {
        Boundary bd;
        if (rng() % 4 == 0) {
          // try to place a spot on an untouched vertex
          int v = rng() % vcount;
          if (quota[v] == 3 && !spot_used[v]) {
            spot_used[v] = true;
            quota[v] = 0;
            bd.spot = true;
            bd.walk.push_back("w" + std::to_string(v));
            reg.boundaries.push_back(bd);
          }
          continue;
        }
        int len = 1 + rng() % 4;
        for (int k = 0; k < len; ++k) {
          int v = rng() % vcount;
          if (quota[v] > 0 && !spot_used[v]) {
            --quota[v];
            bd.walk.push_back("w" + std::to_string(v));
          }
        }
        if (!bd.walk.empty()) reg.boundaries.push_back(bd);
      }
      if (!reg.boundaries.empty()) p.regions.push_back(reg);
    }
    if (p.regions.empty()) continue;
    CHECK(validate(p).empty());
    CHECK(parse_position(serialize_position(p)) == p);

    // sum of lives = 3*#vertices - #non-spot occurrences
    int occ = 0;
    std::set<std::string> verts;
    for (const Region& r : p.regions)
      for (const Boundary& b : r.boundaries)
        for (const std::string& v : b.walk) {
          verts.insert(v);
          if (!b.spot) ++occ;
        }
    int sum = 0;
    for (const std::string& v : verts) {
      int l = lives_of(p, v);
      CHECK(l >= 0);
      CHECK(l <= 3);
      sum += l;
    }
    CHECK(sum == 3 * static_cast<int>(verts.size()) - occ);
  }
}
