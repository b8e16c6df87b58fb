#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "xplain/core/types.hpp"
#include "xplain/core/util.hpp"

namespace xplain {

enum class Behavior { Search, Rescue, Fixed, PacmanHeuristic, BabyaiGoto };

inline std::string to_string(Behavior b) {
  switch (b) {
    case Behavior::Search: return "search";
    case Behavior::Rescue: return "rescue";
    case Behavior::Fixed: return "fixed";
    case Behavior::PacmanHeuristic: return "heuristic";
    case Behavior::BabyaiGoto: return "goto";
  }
  throw std::logic_error("bad Behavior");
}

inline Behavior behavior_from_string(const std::string& s) {
  if (s == "search") return Behavior::Search;
  if (s == "rescue") return Behavior::Rescue;
  if (s == "fixed") return Behavior::Fixed;
  if (s == "heuristic") return Behavior::PacmanHeuristic;
  if (s == "goto") return Behavior::BabyaiGoto;
  throw std::runtime_error("unknown behavior: " + s);
}

enum class GoalCategory {
  UnexploredRoom,
  Rubble,
  Victim,
  Pellet,
  PowerPellet,
  FrightenedGhost,
  AvoidGhost,
  RedBall,
  FixedPath,
};

inline std::string to_string(GoalCategory c) {
  switch (c) {
    case GoalCategory::UnexploredRoom: return "unexplored_room";
    case GoalCategory::Rubble: return "rubble";
    case GoalCategory::Victim: return "victim";
    case GoalCategory::Pellet: return "pellet";
    case GoalCategory::PowerPellet: return "power_pellet";
    case GoalCategory::FrightenedGhost: return "frightened_ghost";
    case GoalCategory::AvoidGhost: return "avoid_ghost";
    case GoalCategory::RedBall: return "red_ball";
    case GoalCategory::FixedPath: return "fixed_path";
  }
  throw std::logic_error("bad GoalCategory");
}

inline GoalCategory category_from_string(const std::string& s) {
  if (s == "unexplored_room") return GoalCategory::UnexploredRoom;
  if (s == "rubble") return GoalCategory::Rubble;
  if (s == "victim") return GoalCategory::Victim;
  if (s == "pellet") return GoalCategory::Pellet;
  if (s == "power_pellet") return GoalCategory::PowerPellet;
  if (s == "frightened_ghost") return GoalCategory::FrightenedGhost;
  if (s == "avoid_ghost") return GoalCategory::AvoidGhost;
  if (s == "red_ball") return GoalCategory::RedBall;
  if (s == "fixed_path") return GoalCategory::FixedPath;
  throw std::runtime_error("unknown goal category: " + s);
}

enum class Horizon { LongTerm, ShortTerm, Ambiguous };

inline std::string to_string(Horizon h) {
  switch (h) {
    case Horizon::LongTerm: return "long_term";
    case Horizon::ShortTerm: return "short_term";
    case Horizon::Ambiguous: return "ambiguous";
  }
  throw std::logic_error("bad Horizon");
}

inline Horizon horizon_from_string(const std::string& s) {
  if (s == "long_term") return Horizon::LongTerm;
  if (s == "short_term") return Horizon::ShortTerm;
  if (s == "ambiguous") return Horizon::Ambiguous;
  throw std::runtime_error("unknown horizon: " + s);
}

/// The expert's own account of why it acted: the ground truth every
/// explanation is scored against.
struct IntentRecord {
  Behavior strategy = Behavior::Search;
  GoalCategory category = GoalCategory::FixedPath;
  std::optional<Pos> goal;
  Horizon horizon = Horizon::LongTerm;
};

inline json intent_to_json(const IntentRecord& r) {
  json j;
  j["strategy"] = to_string(r.strategy);
  j["category"] = to_string(r.category);
  if (r.goal) {
    j["goal"] = {r.goal->x, r.goal->y};
  } else {
    j["goal"] = nullptr;
  }
  j["horizon"] = to_string(r.horizon);
  return j;
}

inline IntentRecord intent_from_json(const json& j) {
  IntentRecord r;
  r.strategy = behavior_from_string(j.at("strategy").get<std::string>());
  r.category = category_from_string(j.at("category").get<std::string>());
  if (!j.at("goal").is_null()) {
    r.goal = Pos{j.at("goal").at(0).get<int>(), j.at("goal").at(1).get<int>()};
  }
  r.horizon = horizon_from_string(j.at("horizon").get<std::string>());
  return r;
}

}  // namespace xplain
