#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "imeq/error.hpp"

namespace imeq {

// Raw, unvalidated description of a game arena as it comes from input files
// or test fixtures.  validate_arena turns it into an Arena or throws.
struct ArenaSpec {
  std::vector<std::string> players;  // optimisers first
  int optimiser_count = 0;
  std::vector<std::pair<std::string, std::string>> vertices;  // (id, owner id)
  std::vector<std::string> actions;
  std::vector<std::tuple<std::string, std::string, std::string>> edges;  // (src, action, dst)
  std::string initial;
};

// A finite turn-based game graph: vertices are partitioned among players,
// edges are labelled with actions, at most one edge per (vertex, action)
// pair, and every vertex has at least one outgoing edge.  Immutable after
// validation.
class Arena {
 public:
  int player_count() const { return static_cast<int>(player_ids.size()); }
  int vertex_count() const { return static_cast<int>(vertex_ids.size()); }
  int action_count() const { return static_cast<int>(action_ids.size()); }

  // Successor of v under action a, or -1 when a is not enabled at v.
  int succ(int v, int a) const { return succ_[v * action_count() + a]; }

  bool enabled(int v, int a) const { return succ(v, a) >= 0; }
  std::vector<int> enabled_actions(int v) const;
  int first_enabled(int v) const;

  bool is_optimiser(int player) const { return player < optimiser_count; }

  int vertex_index(const std::string &id) const;
  int action_index(const std::string &id) const;
  int player_index(const std::string &id) const;

  std::vector<std::string> player_ids;
  int optimiser_count = 0;
  std::vector<std::string> vertex_ids;
  std::vector<int> owner;  // per vertex, player index
  std::vector<std::string> action_ids;
  int initial = 0;

  std::vector<int> succ_;  // row-major [vertex][action], -1 = disabled

  std::map<std::string, int> vertex_lookup;
  std::map<std::string, int> action_lookup;
  std::map<std::string, int> player_lookup;
};

// Checks both arena conditions (per-action determinism, no dead ends) plus
// referential integrity of the description.  Throws Error on violation,
// naming the offending vertex/action.
Arena validate_arena(const ArenaSpec &spec);

// A finite enabled path: a start vertex, the action word, and the vertex
// trace it induces (trace.front() == start, trace.size() == actions.size()+1).
struct FinitePlay {
  int start = 0;
  std::vector<int> actions;
  std::vector<int> trace;

  static FinitePlay from_actions(const Arena &arena, int start,
                                 const std::vector<int> &actions);

  int final_vertex() const { return trace.back(); }
  int length() const { return static_cast<int>(actions.size()); }
};

// v[u]: the vertex reached from v by the action word u, or nullopt when some
// step is not enabled.  The empty word yields v.
std::optional<int> apply_word(const Arena &arena, int v,
                              const std::vector<int> &word);

// The action of player i's last move strictly before the final position of
// the play; nullopt if i never moved.
std::optional<int> last_move_of(const Arena &arena, const FinitePlay &play,
                                int player);

// Eventually-periodic play of a fully fixed profile: stem then cycle, with
// the cycle's vertex set (= the set visited infinitely often).
struct Lasso {
  FinitePlay stem;
  FinitePlay cycle;
  std::set<int> terminal_set;
};

Lasso make_lasso(const Arena &arena, FinitePlay stem, FinitePlay cycle);

// ---------------------------------------------------------------------------
// Generic digraph utilities shared by later layers (compiled imitators,
// product arenas, parity games).

struct SccResult {
  // Components in canonical order: sorted by smallest contained node index;
  // node lists inside each component are sorted.
  std::vector<std::vector<int>> components;
  std::vector<int> component_of;
  std::vector<bool> reachable;  // component reachable from the start node
  std::vector<bool> terminal;   // no edge leaves the component
};

// Iterative Tarjan over an adjacency-list graph.  `start` only affects the
// reachability flags.
SccResult scc_decomposition(const std::vector<std::vector<int>> &adj, int start);

std::vector<bool> reachable_from(const std::vector<std::vector<int>> &adj, int start);

}  // namespace imeq
