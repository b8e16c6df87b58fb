#pragma once

#include <array>
#include <optional>
#include <stdexcept>

#include "xplain/core/rng.hpp"
#include "xplain/core/types.hpp"
#include "xplain/env/feature_manifest.hpp"

namespace xplain::babyai {

constexpr int kGrid = 6;
constexpr int kObjects = 5;

enum class ObjType { Key = 0, Ball = 1, Box = 2 };
enum class Color { Red = 0, Green = 1, Blue = 2, Purple = 3, Yellow = 4, Grey = 5 };

inline const char* type_word(int t) {
  static const char* words[3] = {"key", "ball", "box"};
  return words[t];
}

inline const char* color_word(int c) {
  static const char* words[6] = {"red", "green", "blue", "purple", "yellow", "grey"};
  return words[c];
}

enum class Action { TurnLeft = 0, TurnRight = 1, Forward = 2 };
constexpr int kNumActions = 3;

/// Headings: 0 north, 1 east, 2 south, 3 west (y=0 is the northernmost row).
constexpr int kNorth = 0, kEast = 1, kSouth = 2, kWest = 3;

inline Pos heading_delta(int heading) {
  switch (heading) {
    case kNorth: return {0, -1};
    case kEast: return {1, 0};
    case kSouth: return {0, 1};
    case kWest: return {-1, 0};
  }
  throw std::logic_error("bad heading");
}

inline bool in_grid(Pos p) { return p.x >= 0 && p.x < kGrid && p.y >= 0 && p.y < kGrid; }

struct Obj {
  Pos pos;
  int type = 0;
  int color = 0;
};

/// The red ball always occupies this slot of the object list, so observations
/// and prompts refer to the goal as "Object 1" across every episode.
constexpr int kGoalSlot = 1;

struct State {
  Pos agent;
  int heading = kNorth;
  std::array<Obj, kObjects> objects;
  int goal_index = kGoalSlot;  // the red ball
  int tick = 0;
  uint64_t seed = 0;
};

struct StepEvents {
  bool moved = false;
  bool terminal = false;
};

inline Pos front_cell(const State& s) {
  Pos d = heading_delta(s.heading);
  return {s.agent.x + d.x, s.agent.y + d.y};
}

/// Goal reached: the agent stands next to the red ball, facing it.
inline bool terminal(const State& s) {
  return front_cell(s) == s.objects[static_cast<size_t>(s.goal_index)].pos;
}

inline std::optional<int> object_at(const State& s, Pos p) {
  for (int k = 0; k < kObjects; ++k) {
    if (s.objects[static_cast<size_t>(k)].pos == p) return k;
  }
  return std::nullopt;
}

/// Distractor clutter sits in the four corners of the room; the agent and the
/// red ball spawn on the open floor between them, so walking routes are rarely
/// blocked.
inline State reset(uint64_t seed) {
  State s;
  s.seed = seed;
  Rng rng(seed);
  static constexpr Pos kCorners[4] = {
      {0, 0}, {kGrid - 1, 0}, {0, kGrid - 1}, {kGrid - 1, kGrid - 1}};
  std::vector<int> floor_cells;
  for (int i = 0; i < kGrid * kGrid; ++i) {
    Pos p{i % kGrid, i / kGrid};
    bool corner = (p.x == 0 || p.x == kGrid - 1) && (p.y == 0 || p.y == kGrid - 1);
    if (!corner) floor_cells.push_back(i);
  }
  rng.shuffle(floor_cells);
  s.agent = {floor_cells[0] % kGrid, floor_cells[0] / kGrid};
  s.heading = static_cast<int>(rng.below(4));
  int corner_next = 0;
  for (int k = 0; k < kObjects; ++k) {
    Obj& o = s.objects[static_cast<size_t>(k)];
    if (k == s.goal_index) {
      o.pos = {floor_cells[1] % kGrid, floor_cells[1] / kGrid};
      o.type = static_cast<int>(ObjType::Ball);
      o.color = static_cast<int>(Color::Red);
      continue;
    }
    o.pos = kCorners[corner_next++];
    do {
      o.type = static_cast<int>(rng.below(3));
      o.color = static_cast<int>(rng.below(6));
    } while (o.type == static_cast<int>(ObjType::Ball) &&
             o.color == static_cast<int>(Color::Red));
  }
  return s;
}

inline StepEvents step(State& s, Action a) {
  if (terminal(s)) throw std::runtime_error("step on terminal episode");
  StepEvents ev;
  switch (a) {
    case Action::TurnLeft: s.heading = (s.heading + 3) % 4; break;
    case Action::TurnRight: s.heading = (s.heading + 1) % 4; break;
    case Action::Forward: {
      Pos target = front_cell(s);
      if (in_grid(target) && !object_at(s, target)) {
        s.agent = target;
        ev.moved = true;
      }
      break;
    }
  }
  s.tick += 1;
  ev.terminal = terminal(s);
  return ev;
}

/// Offsets in the agent's rotated frame: +y in front, -y behind, +x to the
/// agent's left, -x to its right. Turning the agent left maps (x, y) to
/// (-y, x) for a stationary object.
inline Pos relative_offset(const State& s, Pos world) {
  int dx = world.x - s.agent.x;
  int dy = world.y - s.agent.y;
  switch (s.heading) {
    case kNorth: return {-dx, -dy};
    case kEast: return {-dy, dx};
    case kSouth: return {dx, dy};
    case kWest: return {dy, -dx};
  }
  throw std::logic_error("bad heading");
}

/// 20 values: for each object, [x, y, type, color] with x/y as rotated-frame
/// offsets, type 0-2 (key/ball/box), color 0-5 (red..grey).
inline FeatureVector encode(const State& s) {
  FeatureVector fv;
  fv.env = EnvId::Babyai;
  fv.values.reserve(4 * kObjects);
  for (const Obj& o : s.objects) {
    Pos rel = relative_offset(s, o.pos);
    fv.values.push_back(rel.x);
    fv.values.push_back(rel.y);
    fv.values.push_back(o.type);
    fv.values.push_back(o.color);
  }
  return fv;
}

inline json to_json(const State& s) {
  json objs = json::array();
  for (const Obj& o : s.objects) {
    objs.push_back({{"pos", {o.pos.x, o.pos.y}}, {"type", o.type}, {"color", o.color}});
  }
  return json{{"agent", {s.agent.x, s.agent.y}},
              {"heading", s.heading},
              {"objects", objs},
              {"goal_index", s.goal_index},
              {"tick", s.tick},
              {"seed", s.seed}};
}

inline State from_json(const json& j) {
  State s;
  s.agent = {j.at("agent").at(0).get<int>(), j.at("agent").at(1).get<int>()};
  s.heading = j.at("heading").get<int>();
  for (size_t k = 0; k < s.objects.size(); ++k) {
    const auto& o = j.at("objects").at(k);
    s.objects[k].pos = {o.at("pos").at(0).get<int>(), o.at("pos").at(1).get<int>()};
    s.objects[k].type = o.at("type").get<int>();
    s.objects[k].color = o.at("color").get<int>();
  }
  s.goal_index = j.at("goal_index").get<int>();
  s.tick = j.at("tick").get<int>();
  s.seed = j.at("seed").get<uint64_t>();
  return s;
}

}  // namespace xplain::babyai
