#pragma once

#include <string>
#include <vector>

#include "imeq/arena.hpp"
#include "imeq/strategy.hpp"

namespace imeq {

// Specification of an imitating player: a memory automaton over observed
// actions, an imitation map saying whose last move to replay in each memory
// state, and a positional fallback for when that player has not moved yet
// (or their last move is not enabled here).
struct ImitatorType {
  std::string name;
  int owner = 0;
  int memory_count = 1;
  int initial = 0;
  std::vector<std::vector<int>> update;  // [action][memory] -> memory
  std::vector<int> fallback;             // per vertex -> action (total)
  std::vector<int> imitate;              // per memory -> player index
  std::vector<std::string> memory_names;
};

void check_imitator(const Arena &arena, const ImitatorType &type);

// The strategy induced by the type on a finite play ending at the owner's
// vertex: replay the imitated player's last move when it exists and is
// enabled, otherwise fall back.
int advise_imitator(const Arena &arena, const ImitatorType &type,
                    const FinitePlay &play);

// The type compiled into a last-move-tracking transducer.  States pair the
// current base vertex, the type's memory, and one last-move register per
// player; only states reachable from the initial one are materialized.
//
// Registers start unset and g' falls back to the positional strategy until
// the imitated player has actually moved, which matches the induced-strategy
// semantics exactly (an arbitrary initial register fill would not).
struct CompiledState {
  int vertex = 0;
  int memory = 0;
  std::vector<int> registers;  // per player, action index or -1 = unset

  bool operator<(const CompiledState &o) const {
    if (vertex != o.vertex) return vertex < o.vertex;
    if (memory != o.memory) return memory < o.memory;
    return registers < o.registers;
  }
};

struct CompiledImitator {
  int owner = 0;
  std::string type_name;
  std::vector<CompiledState> states;
  std::vector<std::vector<int>> delta;  // [state][action] -> state, -1 when the
                                        // action is not enabled at the state's vertex
  int initial = 0;
  std::vector<int> moves;  // g' per state (the state's vertex is implied)

  int state_count() const { return static_cast<int>(states.size()); }
  std::vector<std::vector<int>> transition_graph() const;

  // View as a strategy of the owner, for the product operation.  The move
  // function is defined exactly at (state's vertex, state) pairs.
  StrategyTransducer as_strategy() const;
};

CompiledImitator compile(const ImitatorType &type, const Arena &arena);

// A mode of imitation that can persist: one strongly connected component of
// the compiled transducer's reachable transition graph.
struct Subtype {
  int owner = 0;
  std::string type_name;
  std::vector<int> states;  // compiled state indices, sorted
  bool terminal = false;
};

std::vector<Subtype> subtypes_of(const CompiledImitator &compiled);

}  // namespace imeq
