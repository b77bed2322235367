#include "imeq/reduction.hpp"

#include <algorithm>

namespace imeq {

int Lar::hit_size() const {
  int h = 0;
  for (int x : order) {
    if (x < 0) return h;
    ++h;
  }
  return h;
}

std::vector<int> Lar::hit_set() const {
  std::vector<int> out;
  for (int x : order) {
    if (x < 0) break;
    out.push_back(x);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool Lar::valid(int symbol_count) const {
  if (static_cast<int>(order.size()) != symbol_count + 1) return false;
  std::vector<int> count(symbol_count, 0);
  int markers = 0;
  for (int x : order) {
    if (x == -1) {
      ++markers;
    } else if (x < 0 || x >= symbol_count) {
      return false;
    } else {
      ++count[x];
    }
  }
  if (markers != 1) return false;
  return std::all_of(count.begin(), count.end(), [](int c) { return c == 1; });
}

Lar initial_lar(int symbol_count) {
  Lar l;
  l.order.reserve(symbol_count + 1);
  l.order.push_back(-1);
  for (int s = 0; s < symbol_count; ++s) l.order.push_back(s);
  return l;
}

Lar lar_update(const Lar &l, int symbol) {
  // Symbols strictly after `symbol` in the old record keep their place after
  // the marker; everything once in front of `symbol` ends up between the new
  // front and the marker.
  Lar out;
  out.order.reserve(l.order.size());
  out.order.push_back(symbol);
  bool passed = false;
  std::vector<int> tail;
  for (int x : l.order) {
    if (x == symbol) {
      passed = true;
      continue;
    }
    if (x == -1) continue;
    if (passed)
      tail.push_back(x);
    else
      out.order.push_back(x);
  }
  if (!passed)
    throw Error(Errc::ValidationError, "record update with a symbol not in the record");
  out.order.push_back(-1);
  out.order.insert(out.order.end(), tail.begin(), tail.end());
  return out;
}

int ReducedGame::rank_of(int p, VertexMask base_set) const {
  if (p == dummy_player()) return dummy_preference.rank_of(base_set);
  return preferences[p].rank_of(base_set);
}

int ReducedGame::level_count(int p) const {
  if (p == dummy_player()) return dummy_preference.level_count();
  return preferences[p].level_count();
}

ReducedGame build_reduced_game(const Arena &arena,
                               const std::vector<Preference> &preferences,
                               const std::vector<ImitatorType> &imitator_types) {
  const int n = arena.player_count();
  const int r = arena.optimiser_count;
  if (static_cast<int>(preferences.size()) != n)
    throw Error(Errc::ValidationError, "need one preference per player");
  if (static_cast<int>(imitator_types.size()) != n - r)
    throw Error(Errc::ValidationError,
                "need one imitator type per non-optimiser player");

  ReducedGame rg;
  rg.base = &arena;
  rg.optimiser_count = r;
  rg.preferences = preferences;

  std::vector<StrategyTransducer> factors;
  for (int j = 0; j < n - r; ++j) {
    const ImitatorType &type = imitator_types[j];
    if (type.owner != r + j)
      throw Error(Errc::ValidationError,
                  "imitator types must be listed in player order r+1..n");
    rg.imitators.push_back(compile(type, arena));
    factors.push_back(rg.imitators.back().as_strategy());
  }

  rg.arena = product_all(arena, factors);
  rg.owner.reserve(rg.arena.vertex_count());
  for (int pv = 0; pv < rg.arena.vertex_count(); ++pv) {
    int base_owner = arena.owner[rg.arena.base_of(pv)];
    rg.owner.push_back(base_owner < r ? base_owner : r);
  }

  rg.dummy_preference = n > r ? preferences[n - 1] : indifferent_preference(r);

  for (int pv = 0; pv < rg.arena.vertex_count(); ++pv)
    if (rg.owner[pv] == rg.dummy_player() && rg.arena.out_degree(pv) != 1)
      throw Error(Errc::ValidationError,
                  "imitator-derived vertex does not have a unique outgoing edge");
  return rg;
}

}  // namespace imeq
