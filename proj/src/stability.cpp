#include "imeq/stability.hpp"

#include <algorithm>

namespace imeq {

std::vector<int> Simulation::cycle_states() const {
  std::vector<int> out(state_path.begin() + cycle_start, state_path.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Simulation simulate(const Arena &arena, const FullProfile &profile) {
  const int r = arena.optimiser_count;
  if (static_cast<int>(profile.optimisers.size()) != r)
    throw Error(Errc::ValidationError, "profile needs one strategy per optimiser");
  if (static_cast<int>(profile.imitators.size()) != arena.player_count() - r)
    throw Error(Errc::ValidationError, "profile needs one type per imitator");

  std::vector<StrategyTransducer> factors = profile.optimisers;
  for (int j = 0; j < static_cast<int>(profile.imitators.size()); ++j) {
    if (profile.imitators[j].owner != r + j)
      throw Error(Errc::ValidationError, "imitators must be listed in player order");
    factors.push_back(compile(profile.imitators[j], arena).as_strategy());
  }
  for (const auto &t : factors) check_strategy(arena, t);

  Simulation sim;
  sim.product = product_all(arena, factors);

  std::vector<int> seen(sim.product.vertex_count(), -1);
  std::vector<int> path_actions;
  int pv = sim.product.initial;
  while (seen[pv] < 0) {
    seen[pv] = static_cast<int>(sim.state_path.size());
    sim.state_path.push_back(pv);
    int a = -1;
    for (int b = 0; b < sim.product.action_count(); ++b)
      if (sim.product.succ(pv, b) >= 0) {
        if (a >= 0)
          throw std::logic_error("full profile product is not deterministic");
        a = b;
      }
    path_actions.push_back(a);
    pv = sim.product.succ(pv, a);
  }
  sim.cycle_start = seen[pv];

  std::vector<int> stem_actions(path_actions.begin(),
                                path_actions.begin() + sim.cycle_start);
  std::vector<int> cycle_actions(path_actions.begin() + sim.cycle_start,
                                 path_actions.end());
  FinitePlay stem = FinitePlay::from_actions(arena, arena.initial, stem_actions);
  FinitePlay cycle = FinitePlay::from_actions(arena, stem.final_vertex(), cycle_actions);
  sim.lasso = make_lasso(arena, std::move(stem), std::move(cycle));
  sim.terminal_mask = mask_of(sim.lasso.terminal_set);
  return sim;
}

bool settles_to(const Arena &arena, const FullProfile &profile, VertexMask w) {
  return simulate(arena, profile).terminal_mask == w;
}

std::vector<SurvivingSubtype> surviving_subtypes(const Arena &arena,
                                                 const FullProfile &profile) {
  Simulation sim = simulate(arena, profile);
  const int r = arena.optimiser_count;
  std::vector<SurvivingSubtype> out;
  for (int j = 0; j < static_cast<int>(profile.imitators.size()); ++j) {
    CompiledImitator compiled = compile(profile.imitators[j], arena);
    int coordinate = r + j;  // factor order: optimisers first

    std::vector<int> projection;
    for (int pv : sim.cycle_states())
      projection.push_back(sim.product.vertices[pv].memory[coordinate]);
    std::sort(projection.begin(), projection.end());
    projection.erase(std::unique(projection.begin(), projection.end()), projection.end());

    std::vector<Subtype> subtypes = subtypes_of(compiled);
    const Subtype *home = nullptr;
    for (const Subtype &st : subtypes) {
      bool contains_all = std::includes(st.states.begin(), st.states.end(),
                                        projection.begin(), projection.end());
      if (contains_all) {
        home = &st;
        break;
      }
    }
    if (!home)
      throw std::logic_error("limit states of a deterministic play must lie in one component");
    out.push_back({r + j, *home, projection});
  }
  return out;
}

WorseOffReport worse_off(const Arena &arena, const std::vector<Preference> &preferences,
                         const FullProfile &profile, int imitator,
                         const SolverOptions &opts) {
  if (imitator < arena.optimiser_count || imitator >= arena.player_count())
    throw Error(Errc::UnknownPlayer, "worse-off queries are about imitators");

  Simulation sim = simulate(arena, profile);

  // Equilibrium of the game with every player optimising.
  Arena everyone = arena;
  everyone.optimiser_count = arena.player_count();
  ReducedGame rg = build_reduced_game(everyone, preferences, {});
  Profile nash = find_nash(rg, opts);
  VerifyResult check = verify_profile(rg, nash, opts.oracle);
  if (!check.nash)
    throw std::logic_error("equilibrium failed its own deviation check");

  WorseOffReport report;
  report.profile_set = sim.terminal_mask;
  report.equilibrium_set = nash.outcome_set;
  report.profile_level = preferences[imitator].rank_of(report.profile_set);
  report.equilibrium_level = preferences[imitator].rank_of(report.equilibrium_set);
  report.verdict = preferences[imitator].compare(report.profile_set, report.equilibrium_set);
  return report;
}

}  // namespace imeq
