#include "imeq/arena.hpp"

#include <algorithm>

namespace imeq {

const char *errc_name(Errc c) {
  switch (c) {
    case Errc::DuplicateActionEdge: return "DuplicateActionEdge";
    case Errc::DeadEnd: return "DeadEnd";
    case Errc::UnknownVertex: return "UnknownVertex";
    case Errc::UnknownAction: return "UnknownAction";
    case Errc::UnknownPlayer: return "UnknownPlayer";
    case Errc::UnknownOwner: return "UnknownOwner";
    case Errc::UndefinedMove: return "UndefinedMove";
    case Errc::NoCandidateFound: return "NoCandidateFound";
    case Errc::InstanceTooLarge: return "InstanceTooLarge";
    case Errc::ParseError: return "ParseError";
    case Errc::ValidationError: return "ValidationError";
    case Errc::UnsupportedObject: return "UnsupportedObject";
  }
  return "Error";
}

std::vector<int> Arena::enabled_actions(int v) const {
  std::vector<int> out;
  for (int a = 0; a < action_count(); ++a)
    if (enabled(v, a)) out.push_back(a);
  return out;
}

int Arena::first_enabled(int v) const {
  for (int a = 0; a < action_count(); ++a)
    if (enabled(v, a)) return a;
  return -1;
}

int Arena::vertex_index(const std::string &id) const {
  auto it = vertex_lookup.find(id);
  if (it == vertex_lookup.end())
    throw Error(Errc::UnknownVertex, "no vertex named '" + id + "'");
  return it->second;
}

int Arena::action_index(const std::string &id) const {
  auto it = action_lookup.find(id);
  if (it == action_lookup.end())
    throw Error(Errc::UnknownAction, "no action named '" + id + "'");
  return it->second;
}

int Arena::player_index(const std::string &id) const {
  auto it = player_lookup.find(id);
  if (it == player_lookup.end())
    throw Error(Errc::UnknownPlayer, "no player named '" + id + "'");
  return it->second;
}

Arena validate_arena(const ArenaSpec &spec) {
  Arena arena;
  if (spec.players.empty())
    throw Error(Errc::ValidationError, "player list is empty");
  if (spec.optimiser_count < 1 ||
      spec.optimiser_count > static_cast<int>(spec.players.size()))
    throw Error(Errc::ValidationError,
                "optimiser count must be between 1 and the number of players");
  if (spec.vertices.empty())
    throw Error(Errc::ValidationError, "vertex list is empty");
  if (static_cast<int>(spec.vertices.size()) > 64)
    throw Error(Errc::ValidationError,
                "arenas with more than 64 vertices are not supported");

  arena.player_ids = spec.players;
  arena.optimiser_count = spec.optimiser_count;
  for (int i = 0; i < static_cast<int>(spec.players.size()); ++i) {
    if (!arena.player_lookup.emplace(spec.players[i], i).second)
      throw Error(Errc::ValidationError,
                  "duplicate player id '" + spec.players[i] + "'");
  }

  for (const auto &[id, owner_id] : spec.vertices) {
    if (arena.vertex_lookup.count(id))
      throw Error(Errc::ValidationError, "duplicate vertex id '" + id + "'");
    auto it = arena.player_lookup.find(owner_id);
    if (it == arena.player_lookup.end())
      throw Error(Errc::UnknownOwner,
                  "vertex '" + id + "' is owned by unknown player '" + owner_id + "'");
    arena.vertex_lookup.emplace(id, static_cast<int>(arena.vertex_ids.size()));
    arena.vertex_ids.push_back(id);
    arena.owner.push_back(it->second);
  }

  for (int i = 0; i < static_cast<int>(spec.actions.size()); ++i) {
    if (!arena.action_lookup.emplace(spec.actions[i], i).second)
      throw Error(Errc::ValidationError,
                  "duplicate action id '" + spec.actions[i] + "'");
  }
  arena.action_ids = spec.actions;
  if (arena.action_ids.empty())
    throw Error(Errc::ValidationError, "action set is empty");

  arena.succ_.assign(arena.vertex_count() * arena.action_count(), -1);
  for (const auto &[src, act, dst] : spec.edges) {
    auto sit = arena.vertex_lookup.find(src);
    if (sit == arena.vertex_lookup.end())
      throw Error(Errc::UnknownVertex, "edge source '" + src + "' is not a vertex");
    auto dit = arena.vertex_lookup.find(dst);
    if (dit == arena.vertex_lookup.end())
      throw Error(Errc::UnknownVertex, "edge target '" + dst + "' is not a vertex");
    auto ait = arena.action_lookup.find(act);
    if (ait == arena.action_lookup.end())
      throw Error(Errc::UnknownAction, "edge action '" + act + "' is not an action");
    int &slot = arena.succ_[sit->second * arena.action_count() + ait->second];
    if (slot >= 0)
      throw Error(Errc::DuplicateActionEdge,
                  "vertex '" + src + "' has two edges labelled '" + act + "'");
    slot = dit->second;
  }

  for (int v = 0; v < arena.vertex_count(); ++v) {
    if (arena.first_enabled(v) < 0)
      throw Error(Errc::DeadEnd, "vertex '" + arena.vertex_ids[v] + "' has no outgoing edge");
  }

  auto it = arena.vertex_lookup.find(spec.initial);
  if (it == arena.vertex_lookup.end())
    throw Error(Errc::UnknownVertex, "initial vertex '" + spec.initial + "' is not a vertex");
  arena.initial = it->second;
  return arena;
}

FinitePlay FinitePlay::from_actions(const Arena &arena, int start,
                                    const std::vector<int> &actions) {
  FinitePlay play;
  play.start = start;
  play.actions = actions;
  play.trace.reserve(actions.size() + 1);
  play.trace.push_back(start);
  int v = start;
  for (int a : actions) {
    int w = arena.succ(v, a);
    if (w < 0)
      throw Error(Errc::ValidationError,
                  "play step '" + arena.action_ids[a] + "' is not enabled at '" +
                      arena.vertex_ids[v] + "'");
    play.trace.push_back(w);
    v = w;
  }
  return play;
}

std::optional<int> apply_word(const Arena &arena, int v,
                              const std::vector<int> &word) {
  for (int a : word) {
    v = arena.succ(v, a);
    if (v < 0) return std::nullopt;
  }
  return v;
}

std::optional<int> last_move_of(const Arena &arena, const FinitePlay &play,
                                int player) {
  for (int k = play.length(); k >= 1; --k) {
    if (arena.owner[play.trace[k - 1]] == player) return play.actions[k - 1];
  }
  return std::nullopt;
}

Lasso make_lasso(const Arena &arena, FinitePlay stem, FinitePlay cycle) {
  (void)arena;
  if (cycle.length() == 0)
    throw Error(Errc::ValidationError, "lasso cycle must be nonempty");
  if (cycle.trace.front() != cycle.trace.back())
    throw Error(Errc::ValidationError, "lasso cycle must return to its start vertex");
  if (stem.final_vertex() != cycle.start)
    throw Error(Errc::ValidationError, "lasso cycle must start where the stem ends");
  Lasso lasso;
  lasso.terminal_set = std::set<int>(cycle.trace.begin(), cycle.trace.end());
  lasso.stem = std::move(stem);
  lasso.cycle = std::move(cycle);
  return lasso;
}

SccResult scc_decomposition(const std::vector<std::vector<int>> &adj, int start) {
  const int n = static_cast<int>(adj.size());
  SccResult result;
  result.component_of.assign(n, -1);

  // Iterative Tarjan: products and parity graphs can be large enough to blow
  // the call stack.
  std::vector<int> index(n, -1), lowlink(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<int> stack;
  std::vector<std::vector<int>> raw_components;

  struct Frame {
    int v;
    size_t edge;
  };
  int counter = 0;
  std::vector<Frame> call;
  for (int root = 0; root < n; ++root) {
    if (index[root] >= 0) continue;
    call.push_back({root, 0});
    index[root] = lowlink[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      Frame &f = call.back();
      if (f.edge < adj[f.v].size()) {
        int w = adj[f.v][f.edge++];
        if (index[w] < 0) {
          index[w] = lowlink[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          lowlink[f.v] = std::min(lowlink[f.v], index[w]);
        }
      } else {
        if (lowlink[f.v] == index[f.v]) {
          std::vector<int> comp;
          while (true) {
            int w = stack.back();
            stack.pop_back();
            on_stack[w] = false;
            comp.push_back(w);
            if (w == f.v) break;
          }
          std::sort(comp.begin(), comp.end());
          raw_components.push_back(std::move(comp));
        }
        int finished = f.v;
        call.pop_back();
        if (!call.empty())
          lowlink[call.back().v] = std::min(lowlink[call.back().v], lowlink[finished]);
      }
    }
  }

  std::sort(raw_components.begin(), raw_components.end(),
            [](const std::vector<int> &a, const std::vector<int> &b) {
              return a.front() < b.front();
            });
  result.components = std::move(raw_components);
  for (int c = 0; c < static_cast<int>(result.components.size()); ++c)
    for (int v : result.components[c]) result.component_of[v] = c;

  std::vector<bool> vertex_reachable = reachable_from(adj, start);
  result.reachable.assign(result.components.size(), false);
  result.terminal.assign(result.components.size(), true);
  for (int v = 0; v < n; ++v) {
    if (vertex_reachable[v]) result.reachable[result.component_of[v]] = true;
    for (int w : adj[v])
      if (result.component_of[w] != result.component_of[v])
        result.terminal[result.component_of[v]] = false;
  }
  return result;
}

std::vector<bool> reachable_from(const std::vector<std::vector<int>> &adj, int start) {
  std::vector<bool> seen(adj.size(), false);
  if (start < 0 || start >= static_cast<int>(adj.size())) return seen;
  std::vector<int> todo{start};
  seen[start] = true;
  while (!todo.empty()) {
    int v = todo.back();
    todo.pop_back();
    for (int w : adj[v])
      if (!seen[w]) {
        seen[w] = true;
        todo.push_back(w);
      }
  }
  return seen;
}

}  // namespace imeq
