#include "imeq/strategy.hpp"

#include <algorithm>

namespace imeq {

int StrategyTransducer::run(const std::vector<int> &actions) const {
  int m = initial;
  for (int a : actions) m = update[a][m];
  return m;
}

std::optional<int> StrategyTransducer::move_at(int vertex, int memory) const {
  auto it = move.find({vertex, memory});
  if (it == move.end()) return std::nullopt;
  return it->second;
}

StrategyTransducer positional_strategy(const Arena &arena, int owner,
                                       const std::map<int, int> &choice) {
  StrategyTransducer t;
  t.owner = owner;
  t.memory_count = 1;
  t.initial = 0;
  t.update.assign(arena.action_count(), std::vector<int>(1, 0));
  for (auto [v, a] : choice) t.move[{v, 0}] = a;
  return t;
}

void check_strategy(const Arena &arena, const StrategyTransducer &t) {
  if (t.owner < 0 || t.owner >= arena.player_count())
    throw Error(Errc::UnknownPlayer, "strategy owner index out of range");
  if (t.memory_count < 1 || t.initial < 0 || t.initial >= t.memory_count)
    throw Error(Errc::ValidationError, "strategy memory is malformed");
  if (static_cast<int>(t.update.size()) != arena.action_count())
    throw Error(Errc::ValidationError, "strategy update must cover every action");
  for (const auto &row : t.update) {
    if (static_cast<int>(row.size()) != t.memory_count)
      throw Error(Errc::ValidationError, "strategy update must cover every memory state");
    for (int m : row)
      if (m < 0 || m >= t.memory_count)
        throw Error(Errc::ValidationError, "strategy update leaves the memory set");
  }
  for (auto [key, a] : t.move) {
    auto [v, m] = key;
    if (v < 0 || v >= arena.vertex_count())
      throw Error(Errc::UnknownVertex, "strategy move references an unknown vertex");
    if (m < 0 || m >= t.memory_count)
      throw Error(Errc::ValidationError, "strategy move references an unknown memory state");
    if (!arena.enabled(v, a))
      throw Error(Errc::ValidationError,
                  "strategy move '" + arena.action_ids[a] + "' is not enabled at '" +
                      arena.vertex_ids[v] + "'");
  }
  for (int v = 0; v < arena.vertex_count(); ++v) {
    if (arena.owner[v] != t.owner) continue;
    for (int m = 0; m < t.memory_count; ++m)
      if (!t.move.count({v, m}))
        throw Error(Errc::UndefinedMove,
                    "strategy has no move at its own vertex '" + arena.vertex_ids[v] + "'");
  }
}

int advise(const Arena &arena, const StrategyTransducer &t, const FinitePlay &play) {
  int m = t.run(play.actions);
  auto a = t.move_at(play.final_vertex(), m);
  if (!a)
    throw Error(Errc::UndefinedMove,
                "no move defined at '" + arena.vertex_ids[play.final_vertex()] + "'");
  return *a;
}

int ProductArena::out_degree(int pv) const {
  int d = 0;
  for (int a = 0; a < action_count(); ++a)
    if (succ(pv, a) >= 0) ++d;
  return d;
}

std::vector<std::vector<int>> ProductArena::adjacency() const {
  std::vector<std::vector<int>> adj(vertex_count());
  for (int pv = 0; pv < vertex_count(); ++pv)
    for (int a = 0; a < action_count(); ++a)
      if (int w = succ(pv, a); w >= 0) adj[pv].push_back(w);
  return adj;
}

std::string ProductArena::vertex_label(int pv) const {
  std::string s = base->vertex_ids[vertices[pv].base];
  for (int m : vertices[pv].memory) s += "." + std::to_string(m);
  return s;
}

ProductArena identity_product(const Arena &arena) {
  ProductArena p;
  p.base = &arena;
  for (int v = 0; v < arena.vertex_count(); ++v) {
    p.vertices.push_back({v, {}});
    p.index.emplace(p.vertices.back(), v);
  }
  p.succ_ = arena.succ_;
  p.initial = arena.initial;
  return p;
}

namespace {

// Shared edge rule: at the owner's vertices with a defined move, only the
// advised edge survives; elsewhere all base edges survive.  Memory always
// advances by the factor's update.
ProductArena multiply(const ProductArena &p, const StrategyTransducer &t) {
  const Arena &arena = *p.base;
  ProductArena out;
  out.base = p.base;
  out.factors = p.factors;
  out.factors.push_back({t.owner});

  for (int pv = 0; pv < p.vertex_count(); ++pv)
    for (int m = 0; m < t.memory_count; ++m) {
      ProductVertex vert = p.vertices[pv];
      vert.memory.push_back(m);
      out.index.emplace(vert, static_cast<int>(out.vertices.size()));
      out.vertices.push_back(std::move(vert));
    }

  auto id_of = [&](int pv, int m) { return pv * t.memory_count + m; };
  out.succ_.assign(out.vertices.size() * arena.action_count(), -1);
  for (int pv = 0; pv < p.vertex_count(); ++pv) {
    int v = p.base_of(pv);
    for (int m = 0; m < t.memory_count; ++m) {
      std::optional<int> advised = t.move_at(v, m);
      for (int a = 0; a < arena.action_count(); ++a) {
        if (advised && *advised != a) continue;
        int wpv = p.succ(pv, a);
        if (wpv < 0) continue;
        out.succ_[id_of(pv, m) * arena.action_count() + a] = id_of(wpv, t.step(m, a));
      }
    }
  }

  ProductVertex init = p.vertices[p.initial];
  init.memory.push_back(t.initial);
  out.initial = out.index.at(init);
  return out;
}

}  // namespace

ProductArena product(const Arena &arena, const StrategyTransducer &t) {
  return multiply(identity_product(arena), t);
}

ProductArena product(const ProductArena &p, const StrategyTransducer &t) {
  return multiply(p, t);
}

ProductArena restrict_to_reachable(const ProductArena &p) {
  std::vector<bool> keep = reachable_from(p.adjacency(), p.initial);
  std::vector<int> remap(p.vertex_count(), -1);
  ProductArena out;
  out.base = p.base;
  out.factors = p.factors;
  for (int pv = 0; pv < p.vertex_count(); ++pv) {
    if (!keep[pv]) continue;
    remap[pv] = static_cast<int>(out.vertices.size());
    out.index.emplace(p.vertices[pv], remap[pv]);
    out.vertices.push_back(p.vertices[pv]);
  }
  out.succ_.assign(out.vertices.size() * p.action_count(), -1);
  for (int pv = 0; pv < p.vertex_count(); ++pv) {
    if (remap[pv] < 0) continue;
    for (int a = 0; a < p.action_count(); ++a) {
      int w = p.succ(pv, a);
      if (w >= 0) out.succ_[remap[pv] * p.action_count() + a] = remap[w];
    }
  }
  out.initial = remap[p.initial];
  return out;
}

ProductArena product_all(const Arena &arena,
                         const std::vector<StrategyTransducer> &ts) {
  ProductArena p = identity_product(arena);
  for (const auto &t : ts) p = restrict_to_reachable(multiply(p, t));
  return p;
}

VertexMask project_muller(const ProductArena &p, const std::vector<int> &product_vertices) {
  VertexMask m = 0;
  for (int pv : product_vertices) m |= VertexMask(1) << p.base_of(pv);
  return m;
}

int LiftedPreference::rank_of(const std::vector<int> &product_set) const {
  return base->rank_of(project_muller(*product, product_set));
}

PrefOrder LiftedPreference::compare(const std::vector<int> &w,
                                    const std::vector<int> &w2) const {
  return base->compare(project_muller(*product, w), project_muller(*product, w2));
}

LiftedPreference lift_preference(const Preference &pref, const ProductArena &p) {
  return LiftedPreference{&pref, &p};
}

}  // namespace imeq
