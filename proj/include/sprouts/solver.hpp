#pragma once

#include <atomic>
#include <boost/multiprecision/cpp_int.hpp>
#include <chrono>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "sprouts/canonical.hpp"
#include "sprouts/moves.hpp"
#include "sprouts/position.hpp"

namespace sprouts {

struct SolveStats {
  uint64_t memo_entries = 0;
  uint64_t nodes = 0;
  int64_t elapsed_ms = 0;
};

struct ResourceLimitError : std::runtime_error {
  SolveStats stats;
  ResourceLimitError(const std::string& msg, SolveStats s)
      : std::runtime_error(msg), stats(s) {}
};

struct SolverOptions {
  uint64_t memo_limit = 10'000'000;
  double time_limit_s = 600.0;
  int threads = 0;  // 0 = sequential
  bool use_decompose = true;
  SimplifyOptions simplify;
};

enum class Player { First, Second };

// Normal-play nimber solver with a transposition table keyed by the
// canonical form of each independent component.
class Solver {
 public:
  explicit Solver(SolverOptions opts = {});

  int nimber(const Position& p);
  Player winner(const Position& p);
  std::vector<std::pair<Move, std::string>> winning_moves(const Position& p);

  const SolveStats& stats() const { return stats_; }

 private:
  int nimber_of_key(const std::string& key);
  // Canonical keys are interned to dense ids; the memo and the per-child
  // component sets work on ids so the canonical strings are hashed only when
  // a new key is first seen.
  int id_of_canonical(std::string key);
  int component_nimber(int id, int depth);
  int child_value(const std::string& key, int depth);
  // Component ids of one move result, sorted; hits a cache keyed by a cheap
  // symmetric serialization because siblings share most components.
  std::vector<int> component_keys(const Position& child);
  void check_budget();

  SolverOptions opts_;
  std::unordered_map<std::string, int> key_ids_;   // canonical key -> id
  std::vector<std::string> keys_;                  // id -> canonical key
  std::vector<int> values_;                        // id -> nimber or -1
  std::unordered_map<std::string, int> canon_cache_;  // cheap key -> id
  std::mutex memo_mutex_;
  std::atomic<uint64_t> node_count_{0};
  SolveStats stats_;
  std::chrono::steady_clock::time_point start_;
};

// Canonical game trees: nodes are interned sets of child nodes, so two trees
// are equivalent iff they share an id.
class GameTreeForest {
 public:
  explicit GameTreeForest(SimplifyOptions opts = {});

  struct Result {
    int id = 0;
    bool truncated = false;
  };

  Result game_tree(const Position& p, int depth_limit);

  int leaf_id();
  const std::vector<int>& node_children(int id) const { return nodes_[id]; }
  int height(int id) const { return heights_[id]; }

 private:
  int intern(std::vector<int> children);
  int build(const std::string& key, int depth, bool& truncated);

  SimplifyOptions opts_;
  std::vector<std::vector<int>> nodes_;
  std::vector<int> heights_;
  std::map<std::vector<int>, int> intern_;
  std::unordered_map<std::string, int> memo_;
};

// 2^2^...^2^0 with h+1 twos: the number of canonical game trees of height
// <= h. Throws std::overflow_error once the tower no longer fits in memory
// (h >= 6).
boost::multiprecision::cpp_int count_canonical_trees(int h);

// The trees themselves as nested-brace strings, practical for h <= 3.
std::vector<std::string> enumerate_canonical_trees(int h);

struct LimitGenusReport {
  int region = 0;
  int bound = 0;
  std::vector<int> kind_i;         // a_i
  std::vector<int> kind_iib1a;     // b_j + 1
  std::vector<int> kind_iiaa;      // c_k + d_k
  std::vector<int> outside_kills;  // e_l
};

// Upper bound on the limit genus of an orientable region, by the recursion
// bound <= max{a_i; b_j+1; c_k+d_k; e_l}; regions with <= 3 lives bound 0.
LimitGenusReport limit_genus_bound(const Position& p, int region,
                                   const SolverOptions& opts = {});

enum class CellStatus { Solved, LowerBound, Unknown };

struct TableCell {
  CellStatus status = CellStatus::Unknown;
  std::optional<int> nimber;
  std::optional<int> lower_bound;
};

struct NimberTable {
  std::vector<int> spots;
  std::vector<SurfaceKind> surfaces;
  std::vector<std::vector<TableCell>> cells;  // [surface][spot]
};

NimberTable solve_table(const std::vector<int>& spots,
                        const std::vector<SurfaceKind>& surfaces,
                        const SolverOptions& per_cell_opts = {});

}  // namespace sprouts
