#include "imeq/imitator.hpp"

#include <map>

namespace imeq {

void check_imitator(const Arena &arena, const ImitatorType &type) {
  if (type.owner < 0 || type.owner >= arena.player_count())
    throw Error(Errc::UnknownPlayer, "imitator owner index out of range");
  if (type.memory_count < 1 || type.initial < 0 || type.initial >= type.memory_count)
    throw Error(Errc::ValidationError, "imitator memory is malformed");
  if (static_cast<int>(type.update.size()) != arena.action_count())
    throw Error(Errc::ValidationError, "imitator update must cover every action");
  for (const auto &row : type.update)
    if (static_cast<int>(row.size()) != type.memory_count)
      throw Error(Errc::ValidationError, "imitator update must cover every memory state");
  if (static_cast<int>(type.fallback.size()) != arena.vertex_count())
    throw Error(Errc::ValidationError, "imitator fallback must cover every vertex");
  for (int v = 0; v < arena.vertex_count(); ++v)
    if (!arena.enabled(v, type.fallback[v]))
      throw Error(Errc::ValidationError,
                  "imitator fallback '" + arena.action_ids[type.fallback[v]] +
                      "' is not enabled at '" + arena.vertex_ids[v] + "'");
  if (static_cast<int>(type.imitate.size()) != type.memory_count)
    throw Error(Errc::ValidationError, "imitation map must cover every memory state");
  for (int p : type.imitate)
    if (p < 0 || p >= arena.player_count())
      throw Error(Errc::UnknownPlayer, "imitation map references an unknown player");
}

int advise_imitator(const Arena &arena, const ImitatorType &type,
                    const FinitePlay &play) {
  int m = type.initial;
  for (int a : play.actions) m = type.update[a][m];
  int who = type.imitate[m];
  int here = play.final_vertex();
  auto last = last_move_of(arena, play, who);
  if (last && arena.enabled(here, *last)) return *last;
  return type.fallback[here];
}

CompiledImitator compile(const ImitatorType &type, const Arena &arena) {
  check_imitator(arena, type);
  CompiledImitator out;
  out.owner = type.owner;
  out.type_name = type.name;

  std::map<CompiledState, int> seen;
  auto intern = [&](CompiledState s) {
    auto it = seen.find(s);
    if (it != seen.end()) return it->second;
    int id = static_cast<int>(out.states.size());
    seen.emplace(s, id);
    out.states.push_back(std::move(s));
    return id;
  };

  CompiledState init;
  init.vertex = arena.initial;
  init.memory = type.initial;
  init.registers.assign(arena.player_count(), -1);
  out.initial = intern(init);

  for (int id = 0; id < static_cast<int>(out.states.size()); ++id) {
    out.delta.emplace_back(arena.action_count(), -1);
    const CompiledState cur = out.states[id];  // copy: states may reallocate
    for (int a = 0; a < arena.action_count(); ++a) {
      int w = arena.succ(cur.vertex, a);
      if (w < 0) continue;
      CompiledState next = cur;
      next.vertex = w;
      next.memory = type.update[a][cur.memory];
      next.registers[arena.owner[cur.vertex]] = a;
      out.delta[id][a] = intern(std::move(next));
    }
  }

  out.moves.reserve(out.states.size());
  for (const CompiledState &s : out.states) {
    int reg = s.registers[type.imitate[s.memory]];
    if (reg >= 0 && arena.enabled(s.vertex, reg))
      out.moves.push_back(reg);
    else
      out.moves.push_back(type.fallback[s.vertex]);
  }
  return out;
}

std::vector<std::vector<int>> CompiledImitator::transition_graph() const {
  std::vector<std::vector<int>> adj(states.size());
  for (int s = 0; s < state_count(); ++s)
    for (int t : delta[s])
      if (t >= 0) adj[s].push_back(t);
  return adj;
}

StrategyTransducer CompiledImitator::as_strategy() const {
  StrategyTransducer t;
  t.owner = owner;
  t.memory_count = state_count();
  t.initial = initial;
  int actions = static_cast<int>(delta.empty() ? 0 : delta[0].size());
  t.update.assign(actions, std::vector<int>(state_count(), 0));
  for (int s = 0; s < state_count(); ++s)
    for (int a = 0; a < actions; ++a)
      // Disabled actions never occur along real plays; self-loop keeps the
      // update total.
      t.update[a][s] = delta[s][a] >= 0 ? delta[s][a] : s;
  for (int s = 0; s < state_count(); ++s) t.move[{states[s].vertex, s}] = moves[s];
  return t;
}

std::vector<Subtype> subtypes_of(const CompiledImitator &compiled) {
  SccResult sccs = scc_decomposition(compiled.transition_graph(), compiled.initial);
  std::vector<Subtype> out;
  for (int c = 0; c < static_cast<int>(sccs.components.size()); ++c) {
    Subtype st;
    st.owner = compiled.owner;
    st.type_name = compiled.type_name;
    st.states = sccs.components[c];
    st.terminal = sccs.terminal[c];
    out.push_back(std::move(st));
  }
  return out;
}

}  // namespace imeq
