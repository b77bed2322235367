#pragma once

#include <vector>

#include "imeq/solver.hpp"

namespace imeq {

// One fully fixed strategy per player: transducers for the optimisers,
// types for the imitators (in player order r+1..n).
struct FullProfile {
  std::vector<StrategyTransducer> optimisers;
  std::vector<ImitatorType> imitators;
};

// The unique play of a full profile, tracked on the product of the arena
// with every strategy and compiled imitator.
struct Simulation {
  ProductArena product;          // optimiser factors first, then imitators
  std::vector<int> state_path;   // product states in visit order
  int cycle_start = 0;
  std::vector<int> cycle_states() const;
  Lasso lasso;                   // base-arena projection
  VertexMask terminal_mask = 0;
};

Simulation simulate(const Arena &arena, const FullProfile &profile);

// Does the play settle down to exactly the base vertex set W?  Projects the
// terminal product component to first coordinates and compares vertex sets.
bool settles_to(const Arena &arena, const FullProfile &profile, VertexMask w);

// The subtype each imitator ends up in: the terminal product component
// projected onto that imitator's compiled-state coordinate, located inside
// the compiled transducer's component structure.
struct SurvivingSubtype {
  int imitator = 0;  // player index
  Subtype subtype;
  std::vector<int> limit_states;  // the projection itself, sorted
};

std::vector<SurvivingSubtype> surviving_subtypes(const Arena &arena,
                                                 const FullProfile &profile);

// How the profile's outcome compares, for one imitator, against a Nash
// equilibrium of the game with everyone optimising.
struct WorseOffReport {
  PrefOrder verdict = PrefOrder::EqualRank;  // profile outcome vs equilibrium outcome
  VertexMask profile_set = 0;
  VertexMask equilibrium_set = 0;
  int profile_level = 0;
  int equilibrium_level = 0;
};

WorseOffReport worse_off(const Arena &arena, const std::vector<Preference> &preferences,
                         const FullProfile &profile, int imitator,
                         const SolverOptions &opts = {});

}  // namespace imeq
