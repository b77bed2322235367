#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "imeq/stability.hpp"

#include <json.hpp>

namespace imeq {

using Json = nlohmann::ordered_json;

// A .game document: one self-contained description of an arena, preference
// scenarios, optimiser strategies, the named imitator type definitions and
// the per-imitator assignments.
struct GameSpec {
  ArenaSpec raw;
  Arena arena;

  // scenario name -> per-player preference list (player order).  A spec with
  // a bare "preferences" key stores it as the scenario named "default".
  std::map<std::string, std::vector<Preference>> scenarios;

  std::map<std::string, StrategyTransducer> strategies;   // by optimiser id
  std::map<std::string, ImitatorType> imitator_types;     // the k named types
  std::map<std::string, std::string> assignments;         // imitator id -> type name

  const std::vector<Preference> &preferences_for(const std::string &scenario) const;

  // Imitator types instantiated per assigned player, in player order.
  std::vector<ImitatorType> assigned_types() const;

  // Optimiser strategies plus assigned types; throws when a player is not
  // covered.
  FullProfile full_profile() const;
};

GameSpec parse_game_spec(const std::string &path);
GameSpec parse_game_spec_text(const std::string &text, const std::string &source);

Json serialize_game_spec(const GameSpec &spec);

Json serialize_strategy(const Arena &arena, const StrategyTransducer &t);

}  // namespace imeq
