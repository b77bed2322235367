#pragma once

#include <string>
#include <vector>

#include "imeq/arena.hpp"
#include "imeq/imitator.hpp"
#include "imeq/preference.hpp"
#include "imeq/strategy.hpp"

namespace imeq {

// Latest appearance record over symbols 0..k-1: every symbol occurs exactly
// once, plus one occurrence of the marker (-1).  The set of symbols strictly
// before the marker is the hit set of the most recent update.
struct Lar {
  std::vector<int> order;

  bool operator==(const Lar &o) const { return order == o.order; }
  bool operator<(const Lar &o) const { return order < o.order; }

  int hit_size() const;
  std::vector<int> hit_set() const;
  bool valid(int symbol_count) const;
};

// (marker, 0, 1, ..., k-1): symbols in canonical index order.
Lar initial_lar(int symbol_count);

// Move the visited symbol to the front; the marker moves so that the symbols
// strictly after it are exactly those that were strictly after the visited
// symbol before the update.
Lar lar_update(const Lar &l, int symbol);

// The n-player game with imitators transformed into an (r+1)-player game:
// the arena is the product of the base arena with every compiled imitator,
// optimisers keep their vertices, one dummy player owns every vertex derived
// from an imitator vertex (each such vertex has a unique outgoing edge), and
// preferences are lifted through the first-coordinate projection.  The dummy
// inherits the last imitator's preference; it owns no choice, so this only
// pins down test expectations.
struct ReducedGame {
  const Arena *base = nullptr;
  ProductArena arena;
  int optimiser_count = 0;             // dummy player has index optimiser_count
  std::vector<int> owner;              // per product vertex
  std::vector<Preference> preferences; // per base player, in player order
  std::vector<CompiledImitator> imitators;
  Preference dummy_preference;

  int dummy_player() const { return optimiser_count; }

  // Rank of a base Muller set under reduced-game player p's (lifted)
  // preference; p ranges over optimisers and the dummy.
  int rank_of(int p, VertexMask base_set) const;
  int level_count(int p) const;
};

ReducedGame build_reduced_game(const Arena &arena,
                               const std::vector<Preference> &preferences,
                               const std::vector<ImitatorType> &imitator_types);

}  // namespace imeq
