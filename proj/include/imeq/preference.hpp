#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "imeq/arena.hpp"

namespace imeq {

// Outcome of comparing two Muller sets under a player's preference.
// Greater means the first set is strictly preferred.
enum class PrefOrder { Less, EqualRank, Greater };

const char *pref_order_name(PrefOrder o);

// Base-arena vertex sets are small (<= 64 vertices), so Muller sets are
// bitmasks over vertex indices.
using VertexMask = std::uint64_t;

VertexMask mask_of(const std::set<int> &vertices);
std::set<int> set_of(VertexMask mask);

// Total preorder over Muller sets, given as ranked levels (best first).
// Each level groups mutually tied sets; every set not listed anywhere falls
// into the catch-all level at position catch_all_rank.  Ranks are 1-based.
struct Preference {
  int owner = 0;
  std::vector<std::vector<VertexMask>> levels;
  int catch_all_rank = 0;  // 1-based position of the catch-all level

  // Number of distinct ranks including the catch-all.
  int level_count() const { return static_cast<int>(levels.size()) + 1; }

  int rank_of(VertexMask set) const;
  PrefOrder compare(VertexMask x, VertexMask y) const;
};

// Builds a preference from explicit levels.  catch_all_position is the
// 0-based index before which the catch-all is inserted; -1 appends it as the
// worst level.  Rejects sets mentioning unknown vertices or sets listed twice.
Preference make_preference(const Arena &arena, int owner,
                           const std::vector<std::vector<std::set<std::string>>> &levels,
                           int catch_all_position = -1);

// Total indifference: a single catch-all level.
Preference indifferent_preference(int owner);

// Validates + converts id sets, then compares.  This is the user-facing
// entry point; internal code works on masks directly.
PrefOrder compare_sets(const Arena &arena, const Preference &pref,
                       const std::set<std::string> &x,
                       const std::set<std::string> &y);

}  // namespace imeq
