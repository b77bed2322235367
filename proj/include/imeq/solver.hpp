#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "imeq/reduction.hpp"

namespace imeq {

// Win-lose Muller condition: the protagonist wins a play iff the set of
// colors visited infinitely often satisfies `member`.  Conditions over raw
// vertices use the identity coloring; conditions that only depend on a
// projection (such as lifted preference thresholds) use the projection as
// coloring, which keeps the appearance-record memory factorially smaller.
struct MullerCondition {
  int color_count = 0;
  std::function<bool(VertexMask)> member;
};

// Explicit winning family over the vertices of a game graph.
MullerCondition muller_from_family(int vertex_count,
                                   const std::vector<VertexMask> &family);

// A finite game graph with a two-player partition, ready for win-lose
// solving.  `color` maps vertices to condition colors; leave it empty for
// the identity coloring.
struct MullerGameView {
  std::vector<std::vector<int>> adj;
  std::vector<bool> protagonist;
  std::vector<int> color;
  int initial = 0;

  int vertex_count() const { return static_cast<int>(adj.size()); }
  int color_of(int v) const { return color.empty() ? v : color[v]; }
};

MullerGameView reduced_two_player_view(const ReducedGame &rg, int optimiser);

// Parity game over (game vertex, appearance record) pairs.  Max-priority
// convention: the protagonist wins a play iff the highest priority seen
// infinitely often is even.  Priorities come from the record's hit set after
// each update: 2h when the hit set satisfies the condition, 2h+1 otherwise.
struct ParityGame {
  std::vector<int> priority;
  std::vector<bool> protagonist;
  std::vector<std::vector<int>> succ;
  int initial = 0;

  std::vector<int> origin_vertex;  // per parity vertex: underlying game vertex
  std::vector<int> origin_record;  // per parity vertex: index into records
  std::vector<Lar> records;
  std::vector<int> seed;  // per game vertex: a parity vertex deciding its winner

  int vertex_count() const { return static_cast<int>(succ.size()); }
};

ParityGame muller_to_parity(const MullerGameView &game, const MullerCondition &cond);

struct ParitySolution {
  std::vector<bool> protagonist_wins;
  // Chosen successor for every vertex owned by its winner; -1 elsewhere.
  std::vector<int> strategy;
};

// Zielonka's recursive algorithm.  Every solution is passed through a run
// check before being returned: regions must be closed under the loser's
// moves and the strategy-restricted subgraph of each region must contain no
// cycle whose maximum priority favours the loser.
ParitySolution solve_parity(const ParityGame &pg);

// Convenience: per-game-vertex winner of the Muller condition.
std::vector<bool> muller_winners(const MullerGameView &game, const MullerCondition &cond);

// Best preference level player i can force against the coalition of
// everyone else (levels are 1-based, lower is better).
struct PunishmentValue {
  int player = 0;
  int level = 0;
};

// Per-product-vertex guarantee levels for one optimiser.
struct PunishmentTable {
  int player = 0;
  std::vector<int> level;
};

PunishmentTable punishment_table(const ReducedGame &rg, int optimiser);
PunishmentValue punishment_value(const ReducedGame &rg, int optimiser);

struct OracleOptions {
  // Residual graphs beyond this many reachable states are rejected with
  // InstanceTooLarge; the subset enumeration is desk-scale by design.
  int bound = 16;
};

struct SolverOptions {
  // Positional coalition punishers are searched up to this many joint
  // choices before falling back to record-memory punishment strategies.
  int punisher_search_cap = 4096;
  // Cap on candidate outcome projections examined by find_nash.
  int candidate_cap = 1 << 16;
  OracleOptions oracle;
};

// A full profile of the reduced game: one strategy per optimiser (the dummy
// plays its unique edges), keyed by product vertices, plus the resulting
// play.
struct Profile {
  std::vector<StrategyTransducer> strategies;  // indexed by optimiser
  std::vector<int> script_vertices;            // product vertices, stem then cycle
  std::vector<int> script_actions;
  int cycle_start = 0;
  Lasso outcome;        // base-arena projection of the play
  VertexMask outcome_set = 0;
};

// Deviation-proof profile via candidate outcomes filtered by punishment
// values, realized as follow-the-script strategies with grim-trigger
// punishment.  Throws NoCandidateFound if no stable candidate exists (which
// would indicate a bug: an equilibrium always exists).
Profile find_nash(const ReducedGame &rg, const SolverOptions &opts = {});

struct Deviation {
  int player = 0;
  VertexMask achievable_set = 0;
  int achievable_level = 0;
  int outcome_level = 0;
};

struct VerifyResult {
  bool nash = true;
  std::vector<Deviation> deviations;
};

// Brute-force best-response oracle: for each optimiser, fixes everyone else,
// enumerates every inf-set achievable in the residual one-controller graph
// (live strongly connected substructures of its reachable components) and
// reports any with a strictly better preference level.
VerifyResult verify_profile(const ReducedGame &rg, const Profile &profile,
                            const OracleOptions &opts = {});

// Same oracle in the original game: optimiser deviations with the imitators
// held to their types.
VerifyResult verify_imitation_equilibrium(const Arena &arena,
                                          const std::vector<Preference> &preferences,
                                          const std::vector<StrategyTransducer> &optimisers,
                                          const std::vector<ImitatorType> &imitator_types,
                                          const OracleOptions &opts = {});

// Carries a reduced-game equilibrium back to the original game: each
// optimiser's strategy tracks every imitator's compiled state plus the
// reduced strategy's memory in lockstep and consults the reduced move
// function at the tracked product vertex.
std::vector<StrategyTransducer> extract_imitation_equilibrium(const ReducedGame &rg,
                                                              const Profile &nash);

}  // namespace imeq
