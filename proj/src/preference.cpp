#include "imeq/preference.hpp"

#include <algorithm>

namespace imeq {

const char *pref_order_name(PrefOrder o) {
  switch (o) {
    case PrefOrder::Less: return "less";
    case PrefOrder::EqualRank: return "equal-rank";
    case PrefOrder::Greater: return "greater";
  }
  return "?";
}

VertexMask mask_of(const std::set<int> &vertices) {
  VertexMask m = 0;
  for (int v : vertices) m |= VertexMask(1) << v;
  return m;
}

std::set<int> set_of(VertexMask mask) {
  std::set<int> out;
  for (int v = 0; v < 64; ++v)
    if (mask >> v & 1) out.insert(v);
  return out;
}

int Preference::rank_of(VertexMask set) const {
  int rank = 1;
  for (const auto &group : levels) {
    if (rank == catch_all_rank) ++rank;
    if (std::find(group.begin(), group.end(), set) != group.end()) return rank;
    ++rank;
  }
  return catch_all_rank;
}

PrefOrder Preference::compare(VertexMask x, VertexMask y) const {
  int rx = rank_of(x), ry = rank_of(y);
  if (rx < ry) return PrefOrder::Greater;  // lower rank = more preferred
  if (rx > ry) return PrefOrder::Less;
  return PrefOrder::EqualRank;
}

Preference make_preference(const Arena &arena, int owner,
                           const std::vector<std::vector<std::set<std::string>>> &levels,
                           int catch_all_position) {
  Preference pref;
  pref.owner = owner;
  std::set<VertexMask> seen;
  for (const auto &group : levels) {
    std::vector<VertexMask> masks;
    for (const auto &ids : group) {
      std::set<int> vs;
      for (const auto &id : ids) vs.insert(arena.vertex_index(id));
      VertexMask m = mask_of(vs);
      if (!seen.insert(m).second)
        throw Error(Errc::ValidationError,
                    "a Muller set appears in two preference levels");
      masks.push_back(m);
    }
    pref.levels.push_back(std::move(masks));
  }
  if (catch_all_position < 0 ||
      catch_all_position > static_cast<int>(pref.levels.size()))
    pref.catch_all_rank = static_cast<int>(pref.levels.size()) + 1;
  else
    pref.catch_all_rank = catch_all_position + 1;
  return pref;
}

Preference indifferent_preference(int owner) {
  Preference pref;
  pref.owner = owner;
  pref.catch_all_rank = 1;
  return pref;
}

PrefOrder compare_sets(const Arena &arena, const Preference &pref,
                       const std::set<std::string> &x,
                       const std::set<std::string> &y) {
  std::set<int> xs, ys;
  for (const auto &id : x) xs.insert(arena.vertex_index(id));
  for (const auto &id : y) ys.insert(arena.vertex_index(id));
  return pref.compare(mask_of(xs), mask_of(ys));
}

}  // namespace imeq
