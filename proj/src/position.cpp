#include "sprouts/position.hpp"

#include <cctype>
#include <set>

namespace sprouts {

namespace {

struct Cursor {
  const std::string& text;
  size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() &&
           std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  }
  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }
};

std::string parse_name(Cursor& c) {
  c.skip_ws();
  std::string name;
  while (c.pos < c.text.size() &&
         std::isalnum(static_cast<unsigned char>(c.text[c.pos])))
    name += c.text[c.pos++];
  if (name.empty())
    throw ParseError(ViolationKind::SyntaxError,
                     "expected a vertex name at offset " +
                         std::to_string(c.pos));
  return name;
}

Region parse_region(Cursor& c) {
  c.skip_ws();
  std::string tag;
  while (c.pos < c.text.size() &&
         std::isalnum(static_cast<unsigned char>(c.text[c.pos])))
    tag += c.text[c.pos++];
  auto surface = parse_surface(tag);
  if (!surface)
    throw ParseError(ViolationKind::BadSurfaceTag,
                     "bad surface tag \"" + tag + "\"");
  Region r;
  r.surface = *surface;
  if (!c.eat('{'))
    throw ParseError(ViolationKind::SyntaxError, "expected '{' after \"" + tag +
                                                     "\"");
  if (!c.eat('}')) {
    for (;;) {
      Boundary b;
      for (;;) {
        if (c.eat('*')) {
          if (!b.walk.empty())
            throw ParseError(ViolationKind::DegreeOverflow,
                             "'*' inside a multi-vertex boundary");
          b.spot = true;
        }
        b.walk.push_back(parse_name(c));
        if (!c.eat('.')) break;
      }
      if (b.spot && b.walk.size() != 1)
        throw ParseError(ViolationKind::DegreeOverflow,
                         "a spot must be alone on its boundary");
      r.boundaries.push_back(std::move(b));
      if (!c.eat(',')) break;
    }
    if (!c.eat('}'))
      throw ParseError(ViolationKind::SyntaxError, "expected '}'");
  }
  return r;
}

}  // namespace

Position parse_position(const std::string& text) {
  Cursor c{text};
  Position p;
  for (;;) {
    p.regions.push_back(parse_region(c));
    if (!c.eat(';')) break;
  }
  c.skip_ws();
  if (c.pos != text.size())
    throw ParseError(ViolationKind::SyntaxError,
                     "trailing input at offset " + std::to_string(c.pos));
  auto violations = validate(p);
  if (!violations.empty())
    throw ParseError(violations.front().kind, violations.front().detail);
  return p;
}

std::string serialize_position(const Position& p) {
  std::string out;
  for (size_t ri = 0; ri < p.regions.size(); ++ri) {
    if (ri) out += ';';
    const Region& r = p.regions[ri];
    out += surface_to_string(r.surface);
    out += '{';
    for (size_t bi = 0; bi < r.boundaries.size(); ++bi) {
      if (bi) out += ',';
      const Boundary& b = r.boundaries[bi];
      if (b.spot) out += '*';
      for (size_t vi = 0; vi < b.walk.size(); ++vi) {
        if (vi) out += '.';
        out += b.walk[vi];
      }
    }
    out += '}';
  }
  return out;
}

namespace {

struct Occurrences {
  int plain = 0;  // occurrences on non-spot boundaries
  int spot = 0;   // occurrences as a spot
};

std::map<std::string, Occurrences> count_occurrences(const Position& p) {
  std::map<std::string, Occurrences> occ;
  for (const Region& r : p.regions)
    for (const Boundary& b : r.boundaries)
      for (const std::string& v : b.walk) {
        if (b.spot)
          ++occ[v].spot;
        else
          ++occ[v].plain;
      }
  return occ;
}

}  // namespace

int degree_of(const Position& p, const std::string& name) {
  int degree = 0;
  bool seen = false;
  for (const Region& r : p.regions)
    for (const Boundary& b : r.boundaries)
      for (const std::string& v : b.walk)
        if (v == name) {
          seen = true;
          if (!b.spot) ++degree;
        }
  if (!seen) throw std::out_of_range("unknown vertex \"" + name + "\"");
  return degree;
}

int lives_of(const Position& p, const std::string& name) {
  return 3 - degree_of(p, name);
}

std::map<std::string, int> lives_map(const Position& p) {
  std::map<std::string, int> lives;
  for (const auto& [name, o] : count_occurrences(p))
    lives[name] = o.spot > 0 ? 3 : 3 - o.plain;
  return lives;
}

std::vector<Violation> validate(const Position& p) {
  std::vector<Violation> out;
  for (const Region& r : p.regions) {
    if (!r.surface.valid())
      out.push_back({ViolationKind::BadSurfaceTag,
                     "invalid surface (non-orientable genus 0)"});
    for (const Boundary& b : r.boundaries) {
      if (b.walk.empty())
        out.push_back({ViolationKind::SyntaxError, "empty boundary walk"});
      if (b.spot && b.walk.size() != 1)
        out.push_back({ViolationKind::DegreeOverflow,
                       "spot on a multi-vertex boundary"});
    }
  }
  auto occ = count_occurrences(p);
  for (const auto& [name, o] : occ) {
    if (o.spot > 0 && (o.plain > 0 || o.spot > 1))
      out.push_back({ViolationKind::DegreeOverflow,
                     "spot \"" + name + "\" occurs elsewhere"});
    if (o.plain > 3)
      out.push_back({ViolationKind::DegreeOverflow,
                     "vertex \"" + name + "\" occurs " +
                         std::to_string(o.plain) + " times"});
  }
  return out;
}

Position initial_position(int spots, const SurfaceKind& s) {
  Position p;
  Region r;
  r.surface = s;
  for (int i = 0; i < spots; ++i) {
    Boundary b;
    b.walk.push_back("v" + std::to_string(i));
    b.spot = true;
    r.boundaries.push_back(std::move(b));
  }
  p.regions.push_back(std::move(r));
  return p;
}

int region_lives(const Position& p, int region) {
  if (region < 0 || region >= static_cast<int>(p.regions.size()))
    throw std::out_of_range("region index " + std::to_string(region));
  std::set<std::string> names;
  for (const Boundary& b : p.regions[region].boundaries)
    for (const std::string& v : b.walk) names.insert(v);
  int lives = 0;
  for (const std::string& v : names) lives += lives_of(p, v);
  return lives;
}

int total_lives(const Position& p) {
  int lives = 0;
  for (const auto& [name, o] : count_occurrences(p))
    lives += o.spot > 0 ? 3 : 3 - o.plain;
  return lives;
}

std::vector<std::string> vertex_names(const Position& p) {
  std::vector<std::string> names;
  std::set<std::string> seen;
  for (const Region& r : p.regions)
    for (const Boundary& b : r.boundaries)
      for (const std::string& v : b.walk)
        if (seen.insert(v).second) names.push_back(v);
  return names;
}

}  // namespace sprouts
