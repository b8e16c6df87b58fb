#pragma once

#include <array>
#include <stdexcept>

#include "xplain/core/rng.hpp"
#include "xplain/core/types.hpp"
#include "xplain/env/feature_manifest.hpp"

namespace xplain::usar {

constexpr int kWidth = 4;   // x: 0..3, east-positive
constexpr int kHeight = 5;  // y: 0..4, y=0 is the northernmost row
constexpr int kRooms = kWidth * kHeight;

inline int room_index(int x, int y) { return x * kHeight + y; }
inline Pos room_pos(int idx) { return {idx / kHeight, idx % kHeight}; }
inline bool in_grid(Pos p) { return p.x >= 0 && p.x < kWidth && p.y >= 0 && p.y < kHeight; }

struct Room {
  bool explored = false;
  bool victim = false;        // present and not buried; observable once explored
  bool rubble = false;
  bool hidden_victim = false; // buried under this room's rubble
};

struct State {
  std::array<Room, kRooms> rooms;
  Pos medic;
  Pos engineer;
  int tick = 0;
  uint64_t seed = 0;

  Room& room_at(Pos p) { return rooms[static_cast<size_t>(room_index(p.x, p.y))]; }
  const Room& room_at(Pos p) const {
    return rooms[static_cast<size_t>(room_index(p.x, p.y))];
  }
};

enum class Action { North = 0, South = 1, East = 2, West = 3, Interact = 4 };
constexpr int kNumActions = 5;

struct Config {
  int rubble = 1;
  int victims = 2;
  int hidden = 1;  // victims buried under rubble (<= min(rubble, victims))
};

struct StepEvents {
  bool rubble_removed = false;
  bool victim_revealed = false;
  bool victim_rescued = false;
  bool terminal = false;
};

inline bool terminal(const State& s) {
  for (const Room& r : s.rooms) {
    if (!r.explored || r.rubble || r.victim || r.hidden_victim) return false;
  }
  return true;
}

namespace detail {

/// Rubble and victims concentrate in the northern wing of the building,
/// where the collapse hit hardest; southern rooms are occasionally damaged.
inline int damage_weight(int y) {
  static constexpr int kRowWeight[kHeight] = {20, 2, 1, 1, 1};
  return kRowWeight[y];
}

/// Weighted draw without replacement over free cells.
inline int draw_damaged_cell(Rng& rng, std::vector<int>& free_cells) {
  int total = 0;
  for (int idx : free_cells) total += damage_weight(room_pos(idx).y);
  int pick = static_cast<int>(rng.below(static_cast<uint64_t>(total)));
  for (size_t i = 0; i < free_cells.size(); ++i) {
    pick -= damage_weight(room_pos(free_cells[i]).y);
    if (pick < 0) {
      int cell = free_cells[i];
      free_cells.erase(free_cells.begin() + static_cast<long>(i));
      return cell;
    }
  }
  throw std::logic_error("weighted draw ran past the cell list");
}

}  // namespace detail

/// Agents deploy from opposite corners of the building; rubble and victims
/// land in the remaining rooms, biased toward the northern wing.
inline State reset(uint64_t seed, const Config& cfg = {}) {
  if (cfg.hidden > cfg.rubble || cfg.hidden > cfg.victims) {
    throw std::runtime_error("usar config: hidden victims exceed rubble or victims");
  }
  int visible = cfg.victims - cfg.hidden;
  if (2 + cfg.rubble + visible > kRooms) {
    throw std::runtime_error("usar config: too many entities for the grid");
  }
  State s;
  s.seed = seed;
  s.engineer = {0, 0};
  s.medic = {kWidth - 1, kHeight - 1};
  Rng rng(seed);
  std::vector<int> free_cells;
  free_cells.reserve(kRooms - 2);
  for (int i = 0; i < kRooms; ++i) {
    if (i != room_index(s.engineer.x, s.engineer.y) &&
        i != room_index(s.medic.x, s.medic.y)) {
      free_cells.push_back(i);
    }
  }

  for (int i = 0; i < cfg.rubble; ++i) {
    Room& r = s.rooms[static_cast<size_t>(detail::draw_damaged_cell(rng, free_cells))];
    r.rubble = true;
    if (i < cfg.hidden) r.hidden_victim = true;
  }
  for (int i = 0; i < visible; ++i) {
    s.rooms[static_cast<size_t>(detail::draw_damaged_cell(rng, free_cells))].victim = true;
  }
  s.room_at(s.engineer).explored = true;
  s.room_at(s.medic).explored = true;
  return s;
}

inline Pos move_target(Pos p, Action a) {
  switch (a) {
    case Action::North: return {p.x, p.y - 1};
    case Action::South: return {p.x, p.y + 1};
    case Action::East: return {p.x + 1, p.y};
    case Action::West: return {p.x - 1, p.y};
    default: return p;
  }
}

namespace detail {

inline void apply_agent(State& s, Role role, Action a, StepEvents& ev) {
  Pos& pos = role == Role::Engineer ? s.engineer : s.medic;
  if (a == Action::Interact) {
    Room& r = s.room_at(pos);
    if (role == Role::Engineer) {
      if (r.rubble) {
        r.rubble = false;
        ev.rubble_removed = true;
        if (r.hidden_victim) {
          r.hidden_victim = false;
          r.victim = true;
          ev.victim_revealed = true;
        }
      }
    } else {
      if (r.victim) {
        r.victim = false;
        ev.victim_rescued = true;
      }
    }
    return;
  }
  Pos target = move_target(pos, a);
  if (in_grid(target)) pos = target;  // boundary moves are position no-ops
  s.room_at(pos).explored = true;
}

}  // namespace detail

/// Advances one tick. The engineer resolves first, then the medic, so a
/// just-revealed victim is rescuable in the same tick.
inline StepEvents step(State& s, Action engineer_action, Action medic_action) {
  if (terminal(s)) throw std::runtime_error("step on terminal episode");
  StepEvents ev;
  detail::apply_agent(s, Role::Engineer, engineer_action, ev);
  detail::apply_agent(s, Role::Medic, medic_action, ev);
  s.tick += 1;
  ev.terminal = terminal(s);
  return ev;
}

/// 100 flags in room-major order: for each room (x-major, y inner),
/// [explored, victim, rubble, engineer, medic]. Victim and rubble flags are
/// masked until the room has been explored; positions are shared knowledge.
inline FeatureVector encode(const State& s) {
  FeatureVector fv;
  fv.env = EnvId::Usar;
  fv.values.reserve(100);
  for (int x = 0; x < kWidth; ++x) {
    for (int y = 0; y < kHeight; ++y) {
      const Room& r = s.rooms[static_cast<size_t>(room_index(x, y))];
      fv.values.push_back(r.explored ? 1 : 0);
      fv.values.push_back(r.explored && r.victim ? 1 : 0);
      fv.values.push_back(r.explored && r.rubble ? 1 : 0);
      fv.values.push_back(s.engineer.x == x && s.engineer.y == y ? 1 : 0);
      fv.values.push_back(s.medic.x == x && s.medic.y == y ? 1 : 0);
    }
  }
  return fv;
}

inline json to_json(const State& s) {
  json rooms = json::array();
  for (const Room& r : s.rooms) {
    rooms.push_back({{"explored", r.explored},
                     {"victim", r.victim},
                     {"rubble", r.rubble},
                     {"hidden_victim", r.hidden_victim}});
  }
  return json{{"rooms", rooms},
              {"medic", {s.medic.x, s.medic.y}},
              {"engineer", {s.engineer.x, s.engineer.y}},
              {"tick", s.tick},
              {"seed", s.seed}};
}

inline State from_json(const json& j) {
  State s;
  const auto& rooms = j.at("rooms");
  for (size_t i = 0; i < s.rooms.size(); ++i) {
    const auto& r = rooms.at(i);
    s.rooms[i].explored = r.at("explored").get<bool>();
    s.rooms[i].victim = r.at("victim").get<bool>();
    s.rooms[i].rubble = r.at("rubble").get<bool>();
    s.rooms[i].hidden_victim = r.at("hidden_victim").get<bool>();
  }
  s.medic = {j.at("medic").at(0).get<int>(), j.at("medic").at(1).get<int>()};
  s.engineer = {j.at("engineer").at(0).get<int>(), j.at("engineer").at(1).get<int>()};
  s.tick = j.at("tick").get<int>();
  s.seed = j.at("seed").get<uint64_t>();
  return s;
}

}  // namespace xplain::usar
