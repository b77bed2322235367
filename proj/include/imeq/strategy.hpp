#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "imeq/arena.hpp"
#include "imeq/preference.hpp"

namespace imeq {

// Bounded-memory strategy for one player: memory states, a total update
// function over actions, and a partial move function over (base vertex,
// memory).  The move function is defined at least on the owner's vertices;
// leaving it undefined elsewhere is what makes the same type usable for both
// player strategies and the two-case product rule below.
struct StrategyTransducer {
  int owner = 0;
  int memory_count = 1;
  int initial = 0;
  std::vector<std::vector<int>> update;  // [action][memory] -> memory
  std::map<std::pair<int, int>, int> move;  // (vertex, memory) -> action
  std::vector<std::string> memory_names;    // optional, for serialization

  bool memoryless() const { return memory_count == 1; }
  int step(int memory, int action) const { return update[action][memory]; }
  int run(const std::vector<int> &actions) const;
  std::optional<int> move_at(int vertex, int memory) const;
};

// Positional strategy from per-vertex action choices (only the owner's
// vertices need entries).
StrategyTransducer positional_strategy(const Arena &arena, int owner,
                                       const std::map<int, int> &choice);

// Checks the transducer against the arena: update total, every defined move
// enabled at its vertex, owner's vertices covered.  Throws on violation.
void check_strategy(const Arena &arena, const StrategyTransducer &t);

// The strategy's advice after a finite play ending at one of the owner's
// vertices.  Throws UndefinedMove when the move function has no entry.
int advise(const Arena &arena, const StrategyTransducer &t, const FinitePlay &play);

// Result of multiplying an arena by one or more strategy transducers.
// A product vertex is a base vertex plus one memory coordinate per factor,
// in multiplication order.  Edges follow the base arena with all memory
// coordinates updated; at a vertex where some factor's move function is
// defined, only the advised edge survives.
struct ProductVertex {
  int base = 0;
  std::vector<int> memory;

  bool operator<(const ProductVertex &o) const {
    return base != o.base ? base < o.base : memory < o.memory;
  }
};

struct ProductFactor {
  int owner = 0;
};

struct ProductArena {
  const Arena *base = nullptr;
  std::vector<ProductVertex> vertices;
  std::vector<int> succ_;  // row-major [vertex][action], -1 = disabled
  int initial = 0;
  std::vector<ProductFactor> factors;
  std::map<ProductVertex, int> index;

  int vertex_count() const { return static_cast<int>(vertices.size()); }
  int action_count() const { return base->action_count(); }
  int succ(int pv, int a) const { return succ_[pv * action_count() + a]; }
  int base_of(int pv) const { return vertices[pv].base; }
  int out_degree(int pv) const;
  std::vector<std::vector<int>> adjacency() const;
  std::string vertex_label(int pv) const;
};

// Identity product: no factors, vertices mirror the arena.
ProductArena identity_product(const Arena &arena);

// One product step over the full vertex-by-memory grid.
ProductArena product(const Arena &arena, const StrategyTransducer &t);
ProductArena product(const ProductArena &p, const StrategyTransducer &t);

// Left fold of the product over a transducer list, restricted to the part
// reachable from the initial vertex after each step (iterated full grids
// multiply out; reachability commutes with the fold, so the result is the
// reachable part of the full iterated product).
ProductArena product_all(const Arena &arena,
                         const std::vector<StrategyTransducer> &ts);

ProductArena restrict_to_reachable(const ProductArena &p);

// Base Muller set corresponding to a set of product vertices: the set of
// first coordinates.
VertexMask project_muller(const ProductArena &p, const std::vector<int> &product_vertices);

// Preference over product subsets induced by projection: W is compared to W'
// by comparing their projections under the base preference.
struct LiftedPreference {
  const Preference *base = nullptr;
  const ProductArena *product = nullptr;

  int rank_of(const std::vector<int> &product_set) const;
  PrefOrder compare(const std::vector<int> &w, const std::vector<int> &w2) const;
};

LiftedPreference lift_preference(const Preference &pref, const ProductArena &p);

}  // namespace imeq
