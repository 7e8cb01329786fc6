#include <CLI11.hpp>
#include <iostream>
#include <json.hpp>
#include <string>

#include "sprouts/canonical.hpp"
#include "sprouts/moves.hpp"
#include "sprouts/position.hpp"
#include "sprouts/solver.hpp"
#include "sprouts/surface.hpp"

using nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitBudget = 3;

struct Config {
  std::string format = "text";
  uint64_t memo_limit = 10'000'000;
  double time_limit_s = 600.0;
  int threads = 0;
  bool clamp = false;

  sprouts::SolverOptions solver_options() const {
    sprouts::SolverOptions o;
    o.memo_limit = memo_limit;
    o.time_limit_s = time_limit_s;
    o.threads = threads;
    o.simplify.genus_clamp = clamp;
    return o;
  }
};

sprouts::Position position_from_args(const std::string& text, int spots,
                                     const std::string& surface_text) {
  if (!text.empty()) return sprouts::parse_position(text);
  auto s = sprouts::parse_surface(surface_text);
  if (!s)
    throw sprouts::ParseError(sprouts::ViolationKind::BadSurfaceTag,
                              "bad surface \"" + surface_text + "\"");
  if (spots < 1) throw std::invalid_argument("need at least one spot (-p)");
  return sprouts::initial_position(spots, *s);
}

std::vector<sprouts::SurfaceKind> parse_surface_list(const std::string& text) {
  std::vector<sprouts::SurfaceKind> out;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t comma = text.find(',', pos);
    std::string item = text.substr(
        pos, comma == std::string::npos ? std::string::npos : comma - pos);
    auto s = sprouts::parse_surface(item);
    if (!s)
      throw sprouts::ParseError(sprouts::ViolationKind::BadSurfaceTag,
                                "bad surface \"" + item + "\"");
    out.push_back(*s);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::vector<int> parse_spot_range(const std::string& text) {
  size_t dots = text.find("..");
  std::vector<int> out;
  if (dots == std::string::npos) {
    out.push_back(std::stoi(text));
  } else {
    int lo = std::stoi(text.substr(0, dots));
    int hi = std::stoi(text.substr(dots + 2));
    for (int p = lo; p <= hi; ++p) out.push_back(p);
  }
  for (int p : out)
    if (p < 1) throw std::invalid_argument("spot counts must be positive");
  return out;
}

ordered_json stats_json(const sprouts::SolveStats& s) {
  return ordered_json{{"memo_entries", s.memo_entries},
                      {"nodes", s.nodes},
                      {"elapsed_ms", s.elapsed_ms}};
}

int cmd_solve(const Config& cfg, const sprouts::Position& p, bool show_moves) {
  sprouts::Solver solver(cfg.solver_options());
  std::string canonical = sprouts::canonical_form(p);
  ordered_json record{{"position", sprouts::serialize_position(p)},
                      {"canonical", canonical},
                      {"nimber", nullptr},
                      {"nimber_lower_bound", nullptr},
                      {"winner", nullptr},
                      {"stats", stats_json({})}};
  try {
    int nimber = solver.nimber(p);
    record["nimber"] = nimber;
    record["winner"] = nimber != 0 ? "first" : "second";
    record["stats"] = stats_json(solver.stats());
    if (cfg.format == "json") {
      std::cout << record.dump() << "\n";
    } else {
      std::cout << "position: " << record["position"].get<std::string>()
                << "\ncanonical: " << canonical << "\nnimber: " << nimber
                << "\nwinner: " << record["winner"].get<std::string>() << "\n";
      if (show_moves) {
        for (const auto& [m, key] : solver.winning_moves(p))
          std::cout << "winning: " << sprouts::move_to_string(m) << " -> "
                    << key << "\n";
      }
    }
    return kExitOk;
  } catch (const sprouts::ResourceLimitError& e) {
    record["stats"] = stats_json(e.stats);
    if (cfg.format == "json")
      std::cout << record.dump() << "\n";
    else
      std::cout << "position: " << sprouts::serialize_position(p)
                << "\nnimber: unknown (" << e.what() << ")\n";
    return kExitBudget;
  }
}

int cmd_table(const Config& cfg, const std::string& spots_text,
              const std::string& surfaces_text) {
  auto spots = parse_spot_range(spots_text);
  auto surfaces = parse_surface_list(surfaces_text);
  auto table = sprouts::solve_table(spots, surfaces, cfg.solver_options());

  auto cell_text = [](const sprouts::TableCell& c) -> std::string {
    switch (c.status) {
      case sprouts::CellStatus::Solved: return std::to_string(*c.nimber);
      case sprouts::CellStatus::LowerBound:
        return ">" + std::to_string(*c.lower_bound - 1);
      default: return "?";
    }
  };

  if (cfg.format == "json") {
    ordered_json rows = ordered_json::array();
    for (size_t si = 0; si < surfaces.size(); ++si) {
      ordered_json row{{"surface", sprouts::surface_to_string(surfaces[si])},
                       {"cells", ordered_json::array()}};
      for (size_t pi = 0; pi < spots.size(); ++pi) {
        const auto& c = table.cells[si][pi];
        row["cells"].push_back(ordered_json{
            {"spots", spots[pi]},
            {"nimber", c.nimber ? ordered_json(*c.nimber) : nullptr},
            {"nimber_lower_bound",
             c.lower_bound ? ordered_json(*c.lower_bound) : nullptr},
            {"status", c.status == sprouts::CellStatus::Solved ? "solved"
                       : c.status == sprouts::CellStatus::LowerBound
                           ? "lower-bound"
                           : "unknown"}});
      }
      rows.push_back(std::move(row));
    }
    std::cout << ordered_json{{"spots", spots}, {"rows", rows}}.dump() << "\n";
    return kExitOk;
  }

  // csv and text share the grid; rows are surfaces, columns spot counts
  const char sep = cfg.format == "csv" ? ',' : '\t';
  std::cout << "";
  for (int p : spots) std::cout << sep << p;
  std::cout << "\n";
  for (size_t si = 0; si < surfaces.size(); ++si) {
    std::cout << sprouts::surface_to_string(surfaces[si]);
    for (size_t pi = 0; pi < spots.size(); ++pi)
      std::cout << sep << cell_text(table.cells[si][pi]);
    std::cout << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sprouts on compact surfaces: positions, moves, nimbers"};
  app.require_subcommand(1);
  app.fallthrough();

  Config cfg;
  app.add_option("--format", cfg.format, "output format")
      ->check(CLI::IsMember({"text", "json", "csv"}))
      ->capture_default_str();
  app.add_option("--memo-limit", cfg.memo_limit, "transposition table entries")
      ->envname("SPROUTS_MEMO_LIMIT")
      ->capture_default_str();
  app.add_option("--time-limit", cfg.time_limit_s, "time budget in seconds")
      ->envname("SPROUTS_TIME_LIMIT")
      ->capture_default_str();
  app.add_option("--threads", cfg.threads, "worker threads (0 = sequential)")
      ->capture_default_str();
  app.add_flag("--clamp", cfg.clamp, "clamp orientable genus to lives-3");

  std::string word, position_text, surface_text = "S", spots_text = "2..6",
                    surfaces_text = "S";
  int spots = 0, region = 0, height = 0;
  bool count_only = false, list_trees = false, show_moves = false;

  auto* classify = app.add_subcommand("classify", "classify a polygon word");
  classify->add_option("word", word)->required();

  auto* newcmd = app.add_subcommand("new", "print an initial position");
  newcmd->add_option("-p", spots, "spot count")->required();
  newcmd->add_option("-s", surface_text, "surface tag");

  auto* childrencmd =
      app.add_subcommand("children", "canonical children of a position");
  childrencmd->add_option("position", position_text)->required();

  auto* canoncmd = app.add_subcommand("canon", "canonical form of a position");
  canoncmd->add_option("position", position_text)->required();

  auto* solvecmd = app.add_subcommand("solve", "nimber and winner");
  solvecmd->add_option("position", position_text);
  solvecmd->add_option("-p", spots, "spot count");
  solvecmd->add_option("-s", surface_text, "surface tag");
  solvecmd->add_flag("--moves", show_moves, "list winning moves");

  auto* tablecmd = app.add_subcommand("table", "nimber table");
  tablecmd->add_option("--spots", spots_text, "range, e.g. 2..5");
  tablecmd->add_option("--surfaces", surfaces_text, "comma-separated tags");

  auto* treescmd =
      app.add_subcommand("trees", "canonical game tree census");
  treescmd->add_option("--height", height)->required();
  treescmd->add_flag("--count", count_only, "print the count only");
  treescmd->add_flag("--list", list_trees, "list the trees (height <= 3)");

  auto* lgcmd = app.add_subcommand("limit-genus",
                                   "limit-genus bound for a region");
  lgcmd->add_option("position", position_text)->required();
  lgcmd->add_option("--region", region)->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (classify->parsed()) {
      auto w = sprouts::parse_polygon_word(word);
      std::cout << sprouts::surface_to_string(sprouts::classify_polygon_word(w))
                << "\n";
      return kExitOk;
    }
    if (newcmd->parsed()) {
      std::cout << sprouts::serialize_position(
                       position_from_args("", spots, surface_text))
                << "\n";
      return kExitOk;
    }
    if (childrencmd->parsed()) {
      auto p = sprouts::parse_position(position_text);
      auto keys = sprouts::children(p);
      if (cfg.format == "json") {
        std::cout << ordered_json(keys).dump() << "\n";
      } else {
        for (const auto& k : keys) std::cout << k << "\n";
      }
      return kExitOk;
    }
    if (canoncmd->parsed()) {
      auto p = sprouts::parse_position(position_text);
      std::cout << sprouts::canonical_form(p) << "\n";
      return kExitOk;
    }
    if (solvecmd->parsed())
      return cmd_solve(cfg, position_from_args(position_text, spots,
                                               surface_text),
                       show_moves);
    if (tablecmd->parsed()) return cmd_table(cfg, spots_text, surfaces_text);
    if (treescmd->parsed()) {
      auto count = sprouts::count_canonical_trees(height);
      if (cfg.format == "json") {
        ordered_json rec{{"height", height}, {"count", count.str()}};
        if (list_trees)
          rec["trees"] = sprouts::enumerate_canonical_trees(height);
        std::cout << rec.dump() << "\n";
      } else {
        std::cout << count.str() << "\n";
        if (list_trees && !count_only)
          for (const auto& t : sprouts::enumerate_canonical_trees(height))
            std::cout << t << "\n";
      }
      return kExitOk;
    }
    if (lgcmd->parsed()) {
      auto p = sprouts::parse_position(position_text);
      try {
        auto report = sprouts::limit_genus_bound(p, region,
                                                 cfg.solver_options());
        if (cfg.format == "json") {
          std::cout << ordered_json{{"region", report.region},
                                    {"bound", report.bound},
                                    {"kind_i", report.kind_i},
                                    {"kind_iib1a", report.kind_iib1a},
                                    {"kind_iiaa", report.kind_iiaa},
                                    {"outside_kills", report.outside_kills}}
                           .dump()
                    << "\n";
        } else {
          std::cout << report.bound << "\n";
        }
        return kExitOk;
      } catch (const sprouts::ResourceLimitError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBudget;
      }
    }
  } catch (const sprouts::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const sprouts::PolygonWordError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::overflow_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitOk;
}
