#include "imeq/solver.hpp"

#include <algorithm>
#include <bit>
#include <tuple>

namespace imeq {

MullerCondition muller_from_family(int vertex_count,
                                   const std::vector<VertexMask> &family) {
  std::set<VertexMask> sets(family.begin(), family.end());
  return MullerCondition{vertex_count,
                         [sets](VertexMask m) { return sets.count(m) > 0; }};
}

MullerGameView reduced_two_player_view(const ReducedGame &rg, int optimiser) {
  MullerGameView view;
  view.adj = rg.arena.adjacency();
  view.protagonist.resize(rg.arena.vertex_count());
  view.color.resize(rg.arena.vertex_count());
  for (int pv = 0; pv < rg.arena.vertex_count(); ++pv) {
    view.protagonist[pv] = rg.owner[pv] == optimiser;
    view.color[pv] = rg.arena.base_of(pv);
  }
  view.initial = rg.arena.initial;
  return view;
}

namespace {

struct LarTable {
  std::vector<Lar> records;
  std::map<std::vector<int>, int> ids;

  int intern(const Lar &l) {
    auto it = ids.find(l.order);
    if (it != ids.end()) return it->second;
    int id = static_cast<int>(records.size());
    ids.emplace(l.order, id);
    records.push_back(l);
    return id;
  }
};

// Condition-independent part of the record-based parity reduction: the game
// graph paired with latest appearance records of its colors, plus the hit
// information each state was entered with.  Priorities for a concrete
// condition follow from (hit size, hit set) per state, so one product serves
// every threshold over the same coloring.
struct LarProduct {
  LarTable lars;
  std::vector<int> state_vertex;
  std::vector<int> state_record;
  std::vector<std::vector<int>> succ_by_action;  // [state][action] -> state / -1
  std::vector<std::vector<int>> succ;
  std::vector<int> hit_size;
  std::vector<VertexMask> hit_mask;
  std::vector<int> seed;  // per game vertex
  int color_count = 0;

  int state_count() const { return static_cast<int>(state_vertex.size()); }
};

// edges[v] = (action, target) pairs; actions are kept for strategy readback.
LarProduct build_lar_product(const std::vector<std::vector<std::pair<int, int>>> &edges,
                             const std::vector<int> &color, int color_count) {
  LarProduct lp;
  lp.color_count = color_count;
  const int n = static_cast<int>(edges.size());

  std::map<std::pair<int, int>, int> index;
  auto intern_state = [&](int v, int rec) {
    auto it = index.find({v, rec});
    if (it != index.end()) return it->second;
    int id = static_cast<int>(lp.state_vertex.size());
    index.emplace(std::make_pair(v, rec), id);
    lp.state_vertex.push_back(v);
    lp.state_record.push_back(rec);
    const Lar &l = lp.lars.records[rec];
    lp.hit_size.push_back(l.hit_size());
    VertexMask hm = 0;
    for (int c : l.hit_set()) hm |= VertexMask(1) << c;
    lp.hit_mask.push_back(hm);
    return id;
  };

  int actions = 0;
  for (const auto &out : edges)
    for (auto [a, w] : out) actions = std::max(actions, a + 1);

  Lar l0 = initial_lar(color_count);
  lp.seed.resize(n);
  for (int v = 0; v < n; ++v)
    lp.seed[v] = intern_state(v, lp.lars.intern(lar_update(l0, color[v])));

  for (int s = 0; s < static_cast<int>(lp.state_vertex.size()); ++s) {
    int v = lp.state_vertex[s];
    const Lar cur = lp.lars.records[lp.state_record[s]];
    lp.succ_by_action.emplace_back(actions, -1);
    lp.succ.emplace_back();
    for (auto [a, w] : edges[v]) {
      int rec = lp.lars.intern(lar_update(cur, color[w]));
      int t = intern_state(w, rec);
      lp.succ_by_action[s][a] = t;
      lp.succ[s].push_back(t);
    }
  }
  return lp;
}

std::vector<std::vector<std::pair<int, int>>> labelled_edges(
    const std::vector<std::vector<int>> &adj) {
  std::vector<std::vector<std::pair<int, int>>> out(adj.size());
  for (size_t v = 0; v < adj.size(); ++v)
    for (size_t k = 0; k < adj[v].size(); ++k)
      out[v].push_back({static_cast<int>(k), adj[v][k]});
  return out;
}

std::vector<std::vector<std::pair<int, int>>> product_edges(const ProductArena &p) {
  std::vector<std::vector<std::pair<int, int>>> out(p.vertex_count());
  for (int pv = 0; pv < p.vertex_count(); ++pv)
    for (int a = 0; a < p.action_count(); ++a)
      if (int w = p.succ(pv, a); w >= 0) out[pv].push_back({a, w});
  return out;
}

ParityGame parity_from_product(const LarProduct &lp,
                               const std::vector<bool> &protagonist_of_vertex,
                               const MullerCondition &cond) {
  ParityGame pg;
  pg.succ = lp.succ;
  pg.records = lp.lars.records;
  pg.origin_vertex = lp.state_vertex;
  pg.origin_record = lp.state_record;
  pg.seed = lp.seed;
  pg.priority.resize(lp.state_count());
  pg.protagonist.resize(lp.state_count());
  for (int s = 0; s < lp.state_count(); ++s) {
    pg.priority[s] = 2 * lp.hit_size[s] + (cond.member(lp.hit_mask[s]) ? 0 : 1);
    pg.protagonist[s] = protagonist_of_vertex[lp.state_vertex[s]];
  }
  return pg;
}

// ---------------------------------------------------------------------------
// Zielonka's algorithm with strategy extraction.

struct Zielonka {
  const ParityGame &pg;
  std::vector<std::vector<int>> preds;
  std::vector<bool> protagonist_wins;
  std::vector<int> strategy;

  explicit Zielonka(const ParityGame &game) : pg(game) {
    preds.resize(pg.vertex_count());
    for (int v = 0; v < pg.vertex_count(); ++v)
      for (int w : pg.succ[v]) preds[w].push_back(v);
    protagonist_wins.assign(pg.vertex_count(), false);
    strategy.assign(pg.vertex_count(), -1);
  }

  bool owned_by(int v, int player) const {
    return (pg.protagonist[v] ? 0 : 1) == player;
  }

  // Attractor of `targets` for `player` within `alive`; records strategy
  // choices for the player's pulled-in vertices.
  std::vector<int> attract(const std::vector<char> &alive, int player,
                           const std::vector<int> &targets, std::vector<char> &in_attr,
                           std::vector<int> &strat) const {
    std::vector<int> out_degree(pg.vertex_count(), 0);
    for (int v = 0; v < pg.vertex_count(); ++v) {
      if (!alive[v]) continue;
      for (int w : pg.succ[v])
        if (alive[w]) ++out_degree[v];
    }
    std::vector<int> queue = targets;
    std::vector<int> result = targets;
    for (int t : targets) in_attr[t] = true;
    while (!queue.empty()) {
      int w = queue.back();
      queue.pop_back();
      for (int v : preds[w]) {
        if (!alive[v] || in_attr[v]) continue;
        if (owned_by(v, player)) {
          in_attr[v] = true;
          if (strat[v] < 0) strat[v] = w;
          queue.push_back(v);
          result.push_back(v);
        } else if (--out_degree[v] == 0) {
          in_attr[v] = true;
          queue.push_back(v);
          result.push_back(v);
        }
      }
    }
    return result;
  }

  // Max-priority recursion.  The loser-side peel is a loop, so the recursion
  // depth is bounded by the number of distinct priorities.
  void solve(std::vector<char> alive) {
    while (true) {
      int p = -1;
      for (int v = 0; v < pg.vertex_count(); ++v)
        if (alive[v]) p = std::max(p, pg.priority[v]);
      if (p < 0) return;
      const int sigma = p % 2;  // parity player favoured by the top priority

      std::vector<int> tops;
      for (int v = 0; v < pg.vertex_count(); ++v)
        if (alive[v] && pg.priority[v] == p) tops.push_back(v);

      std::vector<char> in_a(pg.vertex_count(), false);
      std::vector<int> strat_a(pg.vertex_count(), -1);
      attract(alive, sigma, tops, in_a, strat_a);

      std::vector<char> rest(pg.vertex_count(), false);
      bool sub_empty = true;
      for (int v = 0; v < pg.vertex_count(); ++v)
        if (alive[v] && !in_a[v]) {
          rest[v] = true;
          sub_empty = false;
        }

      Zielonka sub(*this);
      if (!sub_empty) sub.solve(rest);

      std::vector<int> opp_region;
      for (int v = 0; v < pg.vertex_count(); ++v)
        if (rest[v] && ((sigma == 0) != sub.protagonist_wins[v])) opp_region.push_back(v);

      if (opp_region.empty()) {
        for (int v = 0; v < pg.vertex_count(); ++v) {
          if (!alive[v]) continue;
          protagonist_wins[v] = sigma == 0;
          if (!owned_by(v, sigma)) {
            strategy[v] = -1;
            continue;
          }
          if (rest[v]) {
            strategy[v] = sub.strategy[v];
          } else if (strat_a[v] >= 0) {
            strategy[v] = strat_a[v];
          } else {
            strategy[v] = -1;
            for (int w : pg.succ[v])
              if (alive[w]) {
                strategy[v] = w;
                break;
              }
          }
        }
        return;
      }

      std::vector<char> in_b(pg.vertex_count(), false);
      std::vector<int> strat_b(pg.vertex_count(), -1);
      std::vector<int> b = attract(alive, 1 - sigma, opp_region, in_b, strat_b);
      std::vector<char> in_opp(pg.vertex_count(), false);
      for (int v : opp_region) in_opp[v] = true;

      for (int v : b) {
        protagonist_wins[v] = sigma != 0;
        if (!owned_by(v, 1 - sigma)) {
          strategy[v] = -1;
        } else if (in_opp[v]) {
          strategy[v] = sub.strategy[v];
        } else {
          strategy[v] = strat_b[v];
        }
        alive[v] = false;
      }
    }
  }

 private:
  // Children share the predecessor lists; only the result fields are fresh.
  Zielonka(const Zielonka &parent)
      : pg(parent.pg),
        preds(parent.preds),
        protagonist_wins(pg.vertex_count(), false),
        strategy(pg.vertex_count(), -1) {}
};

// A solved game must satisfy: regions are closed under the loser's moves,
// the winner's strategy stays inside the region, and the strategy-restricted
// subgraph has no cycle whose top priority favours the loser.
void run_check(const ParityGame &pg, const ParitySolution &sol) {
  auto fail = [](const std::string &what) {
    throw std::logic_error("parity solution failed its run check: " + what);
  };
  const int n = pg.vertex_count();
  for (int side = 0; side < 2; ++side) {
    std::vector<char> in_region(n, false);
    for (int v = 0; v < n; ++v) in_region[v] = sol.protagonist_wins[v] == (side == 0);
    std::vector<std::vector<int>> restricted(n);
    int maxp = 0;
    for (int v = 0; v < n; ++v) {
      if (!in_region[v]) continue;
      maxp = std::max(maxp, pg.priority[v]);
      if (pg.protagonist[v] == (side == 0)) {
        int w = sol.strategy[v];
        if (w < 0) fail("missing strategy choice");
        if (std::find(pg.succ[v].begin(), pg.succ[v].end(), w) == pg.succ[v].end())
          fail("strategy edge is not an edge");
        if (!in_region[w]) fail("strategy leaves the winning region");
        restricted[v].push_back(w);
      } else {
        for (int w : pg.succ[v]) {
          if (!in_region[w]) fail("region not closed under the loser's moves");
          restricted[v].push_back(w);
        }
      }
    }
    const int bad_parity = side == 0 ? 1 : 0;
    for (int p = bad_parity; p <= maxp; p += 2) {
      std::vector<int> sub, local(n, -1);
      for (int v = 0; v < n; ++v)
        if (in_region[v] && pg.priority[v] <= p) {
          local[v] = static_cast<int>(sub.size());
          sub.push_back(v);
        }
      std::vector<std::vector<int>> sadj(sub.size());
      for (int v : sub)
        for (int w : restricted[v])
          if (local[w] >= 0) sadj[local[v]].push_back(local[w]);
      SccResult sccs = scc_decomposition(sadj, 0);
      for (const auto &comp : sccs.components) {
        bool cyclic = comp.size() > 1;
        if (!cyclic)
          for (int w : sadj[comp[0]])
            if (w == comp[0]) cyclic = true;
        if (!cyclic) continue;
        for (int lv : comp)
          if (pg.priority[sub[lv]] == p) fail("losing cycle in a winning region");
      }
    }
  }
}

}  // namespace

ParityGame muller_to_parity(const MullerGameView &game, const MullerCondition &cond) {
  if (cond.color_count > 64)
    throw Error(Errc::InstanceTooLarge, "conditions over more than 64 colors");
  std::vector<int> color(game.vertex_count());
  for (int v = 0; v < game.vertex_count(); ++v) color[v] = game.color_of(v);
  LarProduct lp = build_lar_product(labelled_edges(game.adj), color, cond.color_count);
  ParityGame pg = parity_from_product(lp, game.protagonist, cond);
  pg.initial = lp.seed[game.initial];
  for (int pr : pg.priority)
    if (pr > 2 * cond.color_count + 1)
      throw std::logic_error("priority exceeds its bound");
  return pg;
}

ParitySolution solve_parity(const ParityGame &pg) {
  Zielonka z(pg);
  z.solve(std::vector<char>(pg.vertex_count(), true));
  ParitySolution sol{z.protagonist_wins, z.strategy};
  run_check(pg, sol);
  return sol;
}

std::vector<bool> muller_winners(const MullerGameView &game, const MullerCondition &cond) {
  ParityGame pg = muller_to_parity(game, cond);
  ParitySolution sol = solve_parity(pg);
  std::vector<bool> out(game.vertex_count());
  for (int v = 0; v < game.vertex_count(); ++v) out[v] = sol.protagonist_wins[pg.seed[v]];
  return out;
}

// ---------------------------------------------------------------------------
// Punishment values.

namespace {

struct PunishmentSolver {
  const ReducedGame *rg;
  LarProduct lp;

  explicit PunishmentSolver(const ReducedGame &game) : rg(&game) {
    std::vector<int> color(game.arena.vertex_count());
    for (int pv = 0; pv < game.arena.vertex_count(); ++pv)
      color[pv] = game.arena.base_of(pv);
    lp = build_lar_product(product_edges(game.arena), color, game.base->vertex_count());
  }

  ParitySolution solve_threshold(int optimiser, int level) const {
    std::vector<bool> protagonist(rg->arena.vertex_count());
    for (int pv = 0; pv < rg->arena.vertex_count(); ++pv)
      protagonist[pv] = rg->owner[pv] == optimiser;
    const ReducedGame *game = rg;
    MullerCondition cond{game->base->vertex_count(), [game, optimiser, level](VertexMask m) {
                           return game->rank_of(optimiser, m) <= level;
                         }};
    return solve_parity(parity_from_product(lp, protagonist, cond));
  }

  PunishmentTable table(int optimiser) const {
    const int levels = rg->level_count(optimiser);
    PunishmentTable out{optimiser, std::vector<int>(rg->arena.vertex_count(), levels)};
    int unresolved = rg->arena.vertex_count();
    for (int level = 1; level < levels && unresolved > 0; ++level) {
      ParitySolution sol = solve_threshold(optimiser, level);
      for (int pv = 0; pv < rg->arena.vertex_count(); ++pv)
        if (out.level[pv] == levels && sol.protagonist_wins[lp.seed[pv]]) {
          out.level[pv] = level;
          --unresolved;
        }
    }
    return out;
  }

  // Coalition strategy forcing optimiser j's outcome strictly above `level`,
  // as a (product vertex, record id) -> action map.
  std::map<std::pair<int, int>, int> antagonist_strategy(int optimiser, int level) const {
    ParitySolution sol = solve_threshold(optimiser, level);
    std::map<std::pair<int, int>, int> out;
    for (int s = 0; s < lp.state_count(); ++s) {
      if (sol.protagonist_wins[s]) continue;
      int pv = lp.state_vertex[s];
      if (rg->owner[pv] == optimiser) continue;
      int target = sol.strategy[s];
      if (target < 0) continue;
      for (int a = 0; a < static_cast<int>(lp.succ_by_action[s].size()); ++a)
        if (lp.succ_by_action[s][a] == target) {
          out[{pv, lp.state_record[s]}] = a;
          break;
        }
    }
    return out;
  }
};

}  // namespace

PunishmentTable punishment_table(const ReducedGame &rg, int optimiser) {
  if (optimiser < 0 || optimiser >= rg.optimiser_count)
    throw Error(Errc::UnknownPlayer, "punishment values are defined for optimisers");
  return PunishmentSolver(rg).table(optimiser);
}

PunishmentValue punishment_value(const ReducedGame &rg, int optimiser) {
  PunishmentTable t = punishment_table(rg, optimiser);
  return {optimiser, t.level[rg.arena.initial]};
}

// ---------------------------------------------------------------------------
// Best-response oracle.

namespace {

struct ResidualGraph {
  std::vector<std::vector<int>> adj;
  std::vector<int> base_vertex;
  int initial = 0;
};

constexpr int kSubsetEnumerationCap = 20;

// Every inf-set of a one-controller graph is a reachable substructure that is
// strongly connected with every vertex keeping an internal out-edge; this
// enumerates their base projections.
std::vector<VertexMask> achievable_inf_projections(const ResidualGraph &g,
                                                   const OracleOptions &opts) {
  const int n = static_cast<int>(g.adj.size());
  if (n > opts.bound)
    throw Error(Errc::InstanceTooLarge,
                "residual graph has " + std::to_string(n) + " states, oracle bound is " +
                    std::to_string(opts.bound));
  SccResult sccs = scc_decomposition(g.adj, g.initial);
  std::set<VertexMask> found;
  for (int c = 0; c < static_cast<int>(sccs.components.size()); ++c) {
    if (!sccs.reachable[c]) continue;
    const auto &comp = sccs.components[c];
    const int k = static_cast<int>(comp.size());
    if (k > kSubsetEnumerationCap)
      throw Error(Errc::InstanceTooLarge,
                  "residual component has " + std::to_string(k) + " states");
    std::vector<int> local(n, -1);
    for (int i = 0; i < k; ++i) local[comp[i]] = i;
    std::vector<unsigned> out_mask(k, 0), in_mask(k, 0);
    for (int i = 0; i < k; ++i)
      for (int w : g.adj[comp[i]])
        if (local[w] >= 0) {
          out_mask[i] |= 1u << local[w];
          in_mask[local[w]] |= 1u << i;
        }
    for (unsigned sub = 1; sub < (1u << k); ++sub) {
      bool live = true;
      for (int i = 0; i < k && live; ++i)
        if ((sub >> i & 1) && (out_mask[i] & sub) == 0) live = false;
      if (!live) continue;
      int first = std::countr_zero(sub);
      auto closure = [&](const std::vector<unsigned> &step) {
        unsigned seen = 1u << first;
        while (true) {
          unsigned next = seen;
          for (int i = 0; i < k; ++i)
            if (seen >> i & 1) next |= step[i] & sub;
          if (next == seen) return seen;
          seen = next;
        }
      };
      if (closure(out_mask) != sub || closure(in_mask) != sub) continue;
      VertexMask projection = 0;
      for (int i = 0; i < k; ++i)
        if (sub >> i & 1) projection |= VertexMask(1) << g.base_vertex[comp[i]];
      found.insert(projection);
    }
  }
  return {found.begin(), found.end()};
}

int profile_move(const ReducedGame &rg, const Profile &profile, int pv,
                 const std::vector<int> &mems) {
  int who = rg.owner[pv];
  if (who == rg.dummy_player()) {
    for (int a = 0; a < rg.arena.action_count(); ++a)
      if (rg.arena.succ(pv, a) >= 0) return a;
    throw std::logic_error("dummy vertex without a move");
  }
  auto a = profile.strategies[who].move_at(pv, mems[who]);
  if (!a)
    throw Error(Errc::UndefinedMove,
                "profile strategy has no move at vertex " + rg.arena.vertex_label(pv));
  return *a;
}

struct ReducedWalk {
  std::vector<int> states;
  int cycle_start = 0;
  VertexMask terminal = 0;
};

ReducedWalk walk_profile(const ReducedGame &rg, const Profile &profile) {
  const int r = rg.optimiser_count;
  std::map<std::pair<int, std::vector<int>>, int> seen;
  std::vector<int> mems(r);
  for (int j = 0; j < r; ++j) mems[j] = profile.strategies[j].initial;

  ReducedWalk walk;
  int pv = rg.arena.initial;
  while (true) {
    auto key = std::make_pair(pv, mems);
    auto it = seen.find(key);
    if (it != seen.end()) {
      walk.cycle_start = it->second;
      break;
    }
    seen.emplace(key, static_cast<int>(walk.states.size()));
    walk.states.push_back(pv);
    int a = profile_move(rg, profile, pv, mems);
    for (int j = 0; j < r; ++j) mems[j] = profile.strategies[j].step(mems[j], a);
    pv = rg.arena.succ(pv, a);
  }
  for (int i = walk.cycle_start; i < static_cast<int>(walk.states.size()); ++i)
    walk.terminal |= VertexMask(1) << rg.arena.base_of(walk.states[i]);
  return walk;
}

ResidualGraph reduced_residual(const ReducedGame &rg, const Profile &profile,
                               int deviator) {
  const int r = rg.optimiser_count;
  ResidualGraph out;
  std::map<std::pair<int, std::vector<int>>, int> index;
  std::vector<std::pair<int, std::vector<int>>> states;
  auto intern = [&](int pv, std::vector<int> mems) {
    std::pair<int, std::vector<int>> key{pv, std::move(mems)};
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    int id = static_cast<int>(states.size());
    states.push_back(key);
    index.emplace(std::move(key), id);
    out.adj.emplace_back();
    out.base_vertex.push_back(rg.arena.base_of(pv));
    return id;
  };
  std::vector<int> mems0(r);
  for (int j = 0; j < r; ++j) mems0[j] = profile.strategies[j].initial;
  out.initial = intern(rg.arena.initial, mems0);

  for (int id = 0; id < static_cast<int>(states.size()); ++id) {
    const auto [pv, mems] = states[id];
    std::vector<int> actions;
    if (rg.owner[pv] == deviator) {
      for (int a = 0; a < rg.arena.action_count(); ++a)
        if (rg.arena.succ(pv, a) >= 0) actions.push_back(a);
    } else {
      actions.push_back(profile_move(rg, profile, pv, mems));
    }
    for (int a : actions) {
      std::vector<int> next = mems;
      for (int j = 0; j < r; ++j) next[j] = profile.strategies[j].step(next[j], a);
      out.adj[id].push_back(intern(rg.arena.succ(pv, a), std::move(next)));
    }
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Nash search.

namespace {

// Memory layout shared by every profile strategy: follow the script, or
// punish the first deviator forever (positionally or with record memory).
struct MemState {
  int kind = 0;  // 0 follow, 1 punish positional, 2 punish with record
  int t = 0;
  int deviator = 0;
  int pv = 0;
  int rec = 0;

  bool operator<(const MemState &o) const {
    return std::tie(kind, t, deviator, pv, rec) <
           std::tie(o.kind, o.t, o.deviator, o.pv, o.rec);
  }
};

struct PunisherPlan {
  bool needed = false;
  bool positional = true;
  std::map<int, int> choice;                  // product vertex -> action
  std::map<std::pair<int, int>, int> record;  // (product vertex, record id) -> action
};

struct CandidateScript {
  std::vector<int> vertices;  // vertices[t] = vertex where actions[t] is taken
  std::vector<int> actions;
  int cycle_start = 0;
};

// Deterministic BFS path within an allowed vertex set.  Outputs the per-step
// actions and the vertices reached after each step.
bool bfs_path(const ProductArena &arena, const std::vector<char> &allowed, int from,
              const std::vector<char> &target, std::vector<int> &vertices,
              std::vector<int> &actions, int *reached) {
  std::vector<int> parent(arena.vertex_count(), -2), via(arena.vertex_count(), -1);
  std::vector<int> queue{from};
  parent[from] = -1;
  size_t head = 0;
  int hit = target[from] ? from : -1;
  while (hit < 0 && head < queue.size()) {
    int v = queue[head++];
    for (int a = 0; a < arena.action_count() && hit < 0; ++a) {
      int w = arena.succ(v, a);
      if (w < 0 || !allowed[w] || parent[w] != -2) continue;
      parent[w] = v;
      via[w] = a;
      if (target[w]) hit = w;
      queue.push_back(w);
    }
  }
  if (hit < 0) return false;
  std::vector<int> rev_v, rev_a;
  for (int v = hit; parent[v] >= 0; v = parent[v]) {
    rev_v.push_back(v);
    rev_a.push_back(via[v]);
  }
  std::reverse(rev_v.begin(), rev_v.end());
  std::reverse(rev_a.begin(), rev_a.end());
  vertices = std::move(rev_v);
  actions = std::move(rev_a);
  if (reached) *reached = hit;
  return true;
}

// Stem plus a closed walk covering the whole component.
CandidateScript build_script(const ProductArena &arena, const std::vector<int> &component,
                             int entry, const std::vector<int> &stem_vertices,
                             const std::vector<int> &stem_actions) {
  CandidateScript script;
  int pos = arena.initial;
  for (size_t i = 0; i < stem_actions.size(); ++i) {
    script.vertices.push_back(pos);
    script.actions.push_back(stem_actions[i]);
    pos = stem_vertices[i];
  }
  script.cycle_start = static_cast<int>(script.actions.size());
  if (pos != entry) throw std::logic_error("stem does not end at the component entry");

  std::vector<char> in_comp(arena.vertex_count(), false);
  for (int v : component) in_comp[v] = true;
  std::vector<char> visited(arena.vertex_count(), false);
  visited[entry] = true;

  auto append = [&](const std::vector<int> &vs, const std::vector<int> &as) {
    for (size_t i = 0; i < as.size(); ++i) {
      script.vertices.push_back(pos);
      script.actions.push_back(as[i]);
      pos = vs[i];
      visited[pos] = true;
    }
  };

  while (true) {
    int missing = -1;
    for (int v : component)
      if (!visited[v]) {
        missing = v;
        break;
      }
    if (missing < 0 && pos == entry &&
        static_cast<int>(script.actions.size()) > script.cycle_start)
      break;
    if (missing < 0 && pos == entry) {
      // single-vertex component: take one internal step before closing
      bool stepped = false;
      for (int a = 0; a < arena.action_count() && !stepped; ++a) {
        int w = arena.succ(pos, a);
        if (w < 0 || !in_comp[w]) continue;
        script.vertices.push_back(pos);
        script.actions.push_back(a);
        pos = w;
        visited[pos] = true;
        stepped = true;
      }
      if (!stepped) throw std::logic_error("component vertex has no internal edge");
      continue;
    }
    std::vector<char> target(arena.vertex_count(), false);
    target[missing < 0 ? entry : missing] = true;
    std::vector<int> vs, as;
    if (!bfs_path(arena, in_comp, pos, target, vs, as, nullptr))
      throw std::logic_error("candidate component is not strongly connected");
    append(vs, as);
  }
  return script;
}

// Searches a joint positional coalition strategy denying optimiser j every
// outcome strictly better than `threshold` from all given start states.
bool find_positional_punisher(const ReducedGame &rg, int deviator, int threshold,
                              const std::vector<int> &starts, int cap,
                              std::map<int, int> &choice_out) {
  const ProductArena &arena = rg.arena;
  std::vector<int> choice_vertices;
  std::vector<std::vector<int>> options;
  long long combos = 1;
  for (int pv = 0; pv < arena.vertex_count(); ++pv) {
    if (rg.owner[pv] == deviator) continue;
    std::vector<int> acts;
    for (int a = 0; a < arena.action_count(); ++a)
      if (arena.succ(pv, a) >= 0) acts.push_back(a);
    if (acts.size() > 1) {
      choice_vertices.push_back(pv);
      options.push_back(acts);
      combos *= static_cast<long long>(acts.size());
      if (combos > cap) return false;
    } else {
      choice_out[pv] = acts[0];
    }
  }

  // Muller sets the deviator must be denied.
  const Preference &pref = rg.preferences[deviator];
  std::vector<VertexMask> better;
  if (pref.catch_all_rank < threshold) {
    if (rg.base->vertex_count() > 16) return false;
    for (VertexMask m = 1; m < (VertexMask(1) << rg.base->vertex_count()); ++m)
      if (pref.rank_of(m) < threshold) better.push_back(m);
  } else {
    for (const auto &group : pref.levels)
      for (VertexMask m : group)
        if (pref.rank_of(m) < threshold) better.push_back(m);
  }
  if (better.empty()) {
    for (size_t i = 0; i < choice_vertices.size(); ++i)
      choice_out[choice_vertices[i]] = options[i][0];
    return true;
  }

  std::vector<size_t> pick(choice_vertices.size(), 0);
  while (true) {
    std::vector<std::vector<int>> adj(arena.vertex_count());
    std::map<int, int> combo = choice_out;
    for (size_t i = 0; i < choice_vertices.size(); ++i)
      combo[choice_vertices[i]] = options[i][pick[i]];
    for (int pv = 0; pv < arena.vertex_count(); ++pv) {
      if (rg.owner[pv] == deviator) {
        for (int a = 0; a < arena.action_count(); ++a)
          if (int w = arena.succ(pv, a); w >= 0) adj[pv].push_back(w);
      } else {
        adj[pv].push_back(arena.succ(pv, combo.at(pv)));
      }
    }

    std::vector<bool> reach(arena.vertex_count(), false);
    for (int s : starts) {
      std::vector<bool> r = reachable_from(adj, s);
      for (int v = 0; v < arena.vertex_count(); ++v)
        if (r[v]) reach[v] = true;
    }
    bool denied = true;
    for (VertexMask want : better) {
      if (!denied) break;
      std::vector<int> members, local(arena.vertex_count(), -1);
      for (int pv = 0; pv < arena.vertex_count(); ++pv)
        if (want >> arena.base_of(pv) & 1) {
          local[pv] = static_cast<int>(members.size());
          members.push_back(pv);
        }
      std::vector<std::vector<int>> sub(members.size());
      for (int pv : members)
        for (int w : adj[pv])
          if (local[w] >= 0) sub[local[pv]].push_back(local[w]);
      SccResult sccs = scc_decomposition(sub, 0);
      for (const auto &comp : sccs.components) {
        bool live = comp.size() > 1;
        if (!live)
          for (int w : sub[comp[0]])
            if (w == comp[0]) live = true;
        if (!live) continue;
        VertexMask projection = 0;
        bool reachable = false;
        for (int lv : comp) {
          projection |= VertexMask(1) << arena.base_of(members[lv]);
          if (reach[members[lv]]) reachable = true;
        }
        if (reachable && projection == want) {
          denied = false;
          break;
        }
      }
    }
    if (denied) {
      choice_out = combo;
      return true;
    }
    size_t i = 0;
    for (; i < pick.size(); ++i) {
      if (++pick[i] < options[i].size()) break;
      pick[i] = 0;
    }
    if (i == pick.size()) return false;
  }
}

}  // namespace

Profile find_nash(const ReducedGame &rg, const SolverOptions &opts) {
  const ProductArena &arena = rg.arena;
  const int r = rg.optimiser_count;

  PunishmentSolver solver(rg);
  std::vector<PunishmentTable> pun;
  for (int i = 0; i < r; ++i) pun.push_back(solver.table(i));

  VertexMask present = 0;
  for (int pv = 0; pv < arena.vertex_count(); ++pv)
    present |= VertexMask(1) << arena.base_of(pv);
  if (std::popcount(present) > 20)
    throw Error(Errc::InstanceTooLarge, "too many base vertices for candidate enumeration");

  // Candidate outcome projections, best joint preference first, ties broken
  // by the lexicographically least vertex-id sequence.
  struct Candidate {
    VertexMask set;
    int joint;
    std::vector<std::string> ids;
  };
  std::vector<Candidate> candidates;
  for (VertexMask p = present;; p = (p - 1) & present) {
    if (p) {
      Candidate c{p, 0, {}};
      for (int i = 0; i < r; ++i) c.joint += rg.rank_of(i, p);
      for (int v : set_of(p)) c.ids.push_back(rg.base->vertex_ids[v]);
      std::sort(c.ids.begin(), c.ids.end());
      candidates.push_back(std::move(c));
      if (static_cast<int>(candidates.size()) > opts.candidate_cap)
        throw Error(Errc::InstanceTooLarge, "candidate cap exceeded");
    }
    if (!p) break;
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const Candidate &a, const Candidate &b) {
              return a.joint != b.joint ? a.joint < b.joint : a.ids < b.ids;
            });

  for (const Candidate &cand : candidates) {
    std::vector<int> need(r);
    for (int i = 0; i < r; ++i) need[i] = rg.rank_of(i, cand.set);

    // Deviation-proof positions: the owner cannot force anything better than
    // this candidate from here.
    std::vector<char> safe(arena.vertex_count(), true);
    for (int pv = 0; pv < arena.vertex_count(); ++pv)
      if (int who = rg.owner[pv]; who < r) safe[pv] = pun[who].level[pv] >= need[who];
    if (!safe[arena.initial]) continue;

    std::vector<int> members, local(arena.vertex_count(), -1);
    for (int pv = 0; pv < arena.vertex_count(); ++pv)
      if (safe[pv] && (cand.set >> arena.base_of(pv) & 1)) {
        local[pv] = static_cast<int>(members.size());
        members.push_back(pv);
      }
    std::vector<std::vector<int>> sub(members.size());
    for (int pv : members)
      for (int a = 0; a < arena.action_count(); ++a)
        if (int w = arena.succ(pv, a); w >= 0 && local[w] >= 0)
          sub[local[pv]].push_back(local[w]);
    SccResult sccs = scc_decomposition(sub, 0);

    for (const auto &comp : sccs.components) {
      bool live = comp.size() > 1;
      if (!live)
        for (int w : sub[comp[0]])
          if (w == comp[0]) live = true;
      if (!live) continue;
      std::vector<int> component;
      VertexMask projection = 0;
      for (int lv : comp) {
        component.push_back(members[lv]);
        projection |= VertexMask(1) << arena.base_of(members[lv]);
      }
      if (projection != cand.set) continue;

      std::vector<char> target(arena.vertex_count(), false);
      for (int pv : component) target[pv] = true;
      std::vector<int> stem_v, stem_a;
      int entry = -1;
      if (!bfs_path(arena, safe, arena.initial, target, stem_v, stem_a, &entry)) continue;

      CandidateScript script = build_script(arena, component, entry, stem_v, stem_a);
      const int script_len = static_cast<int>(script.actions.size());

      std::vector<PunisherPlan> plans(r);
      std::vector<std::vector<int>> dev_starts(r);
      for (int t = 0; t < script_len; ++t) {
        int pv = script.vertices[t];
        int who = rg.owner[pv];
        if (who >= r) continue;
        for (int a = 0; a < arena.action_count(); ++a) {
          int w = arena.succ(pv, a);
          if (w < 0 || a == script.actions[t]) continue;
          plans[who].needed = true;
          dev_starts[who].push_back(w);
        }
      }
      for (int j = 0; j < r; ++j) {
        if (!plans[j].needed) continue;
        std::sort(dev_starts[j].begin(), dev_starts[j].end());
        dev_starts[j].erase(std::unique(dev_starts[j].begin(), dev_starts[j].end()),
                            dev_starts[j].end());
        if (!find_positional_punisher(rg, j, need[j], dev_starts[j],
                                      opts.punisher_search_cap, plans[j].choice)) {
          plans[j].positional = false;
          plans[j].record = solver.antagonist_strategy(j, need[j] - 1);
        }
      }

      // Shared follow/punish memory automaton.
      std::map<MemState, int> mem_index;
      std::vector<MemState> mem_states;
      auto intern = [&](const MemState &m) {
        auto it = mem_index.find(m);
        if (it != mem_index.end()) return it->second;
        int id = static_cast<int>(mem_states.size());
        mem_index.emplace(m, id);
        mem_states.push_back(m);
        return id;
      };
      for (int t = 0; t < script_len; ++t) intern(MemState{0, t, 0, 0, 0});

      LarTable lars = solver.lp.lars;
      std::vector<std::vector<int>> trans;  // [state][action]
      for (int id = 0; id < static_cast<int>(mem_states.size()); ++id) {
        trans.emplace_back(arena.action_count(), -1);
        const MemState cur = mem_states[id];
        for (int a = 0; a < arena.action_count(); ++a) {
          MemState next = cur;
          if (cur.kind == 0) {
            int pv = script.vertices[cur.t];
            if (a == script.actions[cur.t]) {
              next.t = cur.t + 1 < script_len ? cur.t + 1 : script.cycle_start;
            } else if (int w = arena.succ(pv, a);
                       w >= 0 && rg.owner[pv] < r) {
              int who = rg.owner[pv];
              if (plans[who].positional) {
                next = MemState{1, 0, who, 0, 0};
              } else {
                // punishment strategies are positional in (vertex, record);
                // entering at the seed record keeps every lookup materialized
                next = MemState{2, 0, who, w,
                                solver.lp.state_record[solver.lp.seed[w]]};
              }
            }
            // an action that is impossible at the scripted vertex: ignore
          } else if (cur.kind == 2) {
            if (int w = arena.succ(cur.pv, a); w >= 0) {
              next.pv = w;
              next.rec = lars.intern(lar_update(lars.records[cur.rec], arena.base_of(w)));
            }
          }
          trans[id][a] = intern(next);
        }
      }
      const int mem_count = static_cast<int>(mem_states.size());

      std::vector<std::vector<int>> update(arena.action_count(),
                                           std::vector<int>(mem_count, 0));
      for (int id = 0; id < mem_count; ++id)
        for (int a = 0; a < arena.action_count(); ++a) update[a][id] = trans[id][a];

      Profile profile;
      for (int k = 0; k < r; ++k) {
        StrategyTransducer st;
        st.owner = k;
        st.memory_count = mem_count;
        st.initial = mem_index.at(MemState{0, 0, 0, 0, 0});
        st.update = update;
        for (int pv = 0; pv < arena.vertex_count(); ++pv) {
          if (rg.owner[pv] != k) continue;
          for (int id = 0; id < mem_count; ++id) {
            const MemState &m = mem_states[id];
            int a = -1;
            if (m.kind == 0) {
              if (script.vertices[m.t] == pv) a = script.actions[m.t];
            } else if (m.deviator != k) {
              if (m.kind == 1) {
                auto it = plans[m.deviator].choice.find(pv);
                if (it != plans[m.deviator].choice.end()) a = it->second;
              } else {
                auto it = plans[m.deviator].record.find({pv, m.rec});
                if (it != plans[m.deviator].record.end()) a = it->second;
              }
            }
            if (a < 0 || arena.succ(pv, a) < 0) {
              for (int b = 0; b < arena.action_count(); ++b)
                if (arena.succ(pv, b) >= 0) {
                  a = b;
                  break;
                }
            }
            st.move[{pv, id}] = a;
          }
        }
        profile.strategies.push_back(std::move(st));
      }

      profile.script_vertices = script.vertices;
      profile.script_actions = script.actions;
      profile.cycle_start = script.cycle_start;
      profile.outcome_set = cand.set;

      const Arena &base = *rg.base;
      std::vector<int> stem_actions(script.actions.begin(),
                                    script.actions.begin() + script.cycle_start);
      std::vector<int> cycle_actions(script.actions.begin() + script.cycle_start,
                                     script.actions.end());
      FinitePlay stem = FinitePlay::from_actions(base, base.initial, stem_actions);
      FinitePlay cycle = FinitePlay::from_actions(base, stem.final_vertex(), cycle_actions);
      profile.outcome = make_lasso(base, std::move(stem), std::move(cycle));
      return profile;
    }
  }
  throw Error(Errc::NoCandidateFound,
              "no stable candidate outcome; this indicates a solver bug");
}

VerifyResult verify_profile(const ReducedGame &rg, const Profile &profile,
                            const OracleOptions &opts) {
  if (static_cast<int>(profile.strategies.size()) != rg.optimiser_count)
    throw Error(Errc::ValidationError, "profile must cover every optimiser");
  ReducedWalk walk = walk_profile(rg, profile);

  VerifyResult result;
  for (int i = 0; i < rg.optimiser_count; ++i) {
    int outcome_rank = rg.rank_of(i, walk.terminal);
    ResidualGraph residual = reduced_residual(rg, profile, i);
    for (VertexMask p : achievable_inf_projections(residual, opts)) {
      int rank = rg.rank_of(i, p);
      if (rank < outcome_rank) {
        result.nash = false;
        result.deviations.push_back({i, p, rank, outcome_rank});
      }
    }
  }
  return result;
}

VerifyResult verify_imitation_equilibrium(const Arena &arena,
                                          const std::vector<Preference> &preferences,
                                          const std::vector<StrategyTransducer> &optimisers,
                                          const std::vector<ImitatorType> &imitator_types,
                                          const OracleOptions &opts) {
  const int r = arena.optimiser_count;
  if (static_cast<int>(optimisers.size()) != r)
    throw Error(Errc::ValidationError, "need one strategy per optimiser");
  if (static_cast<int>(preferences.size()) != arena.player_count())
    throw Error(Errc::ValidationError, "need one preference per player");
  std::vector<StrategyTransducer> imitator_strategies;
  for (const auto &type : imitator_types)
    imitator_strategies.push_back(compile(type, arena).as_strategy());

  std::vector<StrategyTransducer> all = optimisers;
  all.insert(all.end(), imitator_strategies.begin(), imitator_strategies.end());
  ProductArena full = product_all(arena, all);
  VertexMask outcome = 0;
  {
    std::vector<int> order(full.vertex_count(), -1);
    int pv = full.initial, step = 0;
    while (order[pv] < 0) {
      order[pv] = step++;
      int a = -1;
      for (int b = 0; b < full.action_count(); ++b)
        if (full.succ(pv, b) >= 0) {
          a = b;
          break;
        }
      pv = full.succ(pv, a);
    }
    const int cycle_start = order[pv];
    for (int v = 0; v < full.vertex_count(); ++v)
      if (order[v] >= cycle_start) outcome |= VertexMask(1) << full.base_of(v);
  }

  VerifyResult result;
  for (int i = 0; i < r; ++i) {
    std::vector<StrategyTransducer> others;
    for (int j = 0; j < r; ++j)
      if (j != i) others.push_back(optimisers[j]);
    others.insert(others.end(), imitator_strategies.begin(), imitator_strategies.end());
    ProductArena rp = product_all(arena, others);
    ResidualGraph residual;
    residual.adj = rp.adjacency();
    residual.initial = rp.initial;
    residual.base_vertex.resize(rp.vertex_count());
    for (int pv = 0; pv < rp.vertex_count(); ++pv) residual.base_vertex[pv] = rp.base_of(pv);

    int outcome_rank = preferences[i].rank_of(outcome);
    for (VertexMask p : achievable_inf_projections(residual, opts)) {
      int rank = preferences[i].rank_of(p);
      if (rank < outcome_rank) {
        result.nash = false;
        result.deviations.push_back({i, p, rank, outcome_rank});
      }
    }
  }
  return result;
}

std::vector<StrategyTransducer> extract_imitation_equilibrium(const ReducedGame &rg,
                                                              const Profile &nash) {
  const Arena &base = *rg.base;
  const int r = rg.optimiser_count;
  const int k = static_cast<int>(rg.imitators.size());
  if (static_cast<int>(nash.strategies.size()) != r)
    throw Error(Errc::ValidationError, "profile must cover every optimiser");

  for (int j = 1; j < r; ++j)
    if (nash.strategies[j].update != nash.strategies[0].update ||
        nash.strategies[j].initial != nash.strategies[0].initial)
      throw Error(Errc::ValidationError,
                  "extraction expects profile strategies with shared memory");

  // Composite memory: every imitator's compiled state plus the reduced
  // strategies' shared memory state, materialized reachably.
  struct Composite {
    std::vector<int> imit;
    int red = 0;
    bool operator<(const Composite &o) const {
      return std::tie(imit, red) < std::tie(o.imit, o.red);
    }
  };
  std::map<Composite, int> index;
  std::vector<Composite> states;
  auto intern = [&](const Composite &c) {
    auto it = index.find(c);
    if (it != index.end()) return it->second;
    int id = static_cast<int>(states.size());
    index.emplace(c, id);
    states.push_back(c);
    return id;
  };

  Composite init;
  for (const auto &ci : rg.imitators) init.imit.push_back(ci.initial);
  init.red = r > 0 ? nash.strategies[0].initial : 0;
  const int init_id = intern(init);

  std::vector<std::vector<int>> trans;
  for (int id = 0; id < static_cast<int>(states.size()); ++id) {
    trans.emplace_back(base.action_count(), -1);
    const Composite cur = states[id];
    for (int a = 0; a < base.action_count(); ++a) {
      Composite next = cur;
      for (int j = 0; j < k; ++j)
        if (int t = rg.imitators[j].delta[cur.imit[j]][a]; t >= 0) next.imit[j] = t;
      if (r > 0) next.red = nash.strategies[0].step(cur.red, a);
      trans[id][a] = intern(next);
    }
  }

  std::vector<StrategyTransducer> out;
  for (int i = 0; i < r; ++i) {
    StrategyTransducer st;
    st.owner = i;
    st.memory_count = static_cast<int>(states.size());
    st.initial = init_id;
    st.update.assign(base.action_count(), std::vector<int>(states.size(), 0));
    for (int id = 0; id < static_cast<int>(states.size()); ++id)
      for (int a = 0; a < base.action_count(); ++a) st.update[a][id] = trans[id][a];
    for (int v = 0; v < base.vertex_count(); ++v) {
      if (base.owner[v] != i) continue;
      for (int id = 0; id < static_cast<int>(states.size()); ++id) {
        ProductVertex key{v, states[id].imit};
        auto it = rg.arena.index.find(key);
        int a = -1;
        if (it != rg.arena.index.end())
          if (auto mv = nash.strategies[i].move_at(it->second, states[id].red)) a = *mv;
        if (a < 0 || !base.enabled(v, a)) a = base.first_enabled(v);
        st.move[{v, id}] = a;
      }
    }
    out.push_back(std::move(st));
  }
  return out;
}

}  // namespace imeq
