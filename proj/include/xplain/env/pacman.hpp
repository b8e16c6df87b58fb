#pragma once

#include <array>
#include <bitset>
#include <cstdlib>
#include <queue>
#include <stdexcept>
#include <vector>

#include "xplain/core/rng.hpp"
#include "xplain/core/types.hpp"
#include "xplain/env/feature_manifest.hpp"

namespace xplain::pacman {

constexpr int kSize = 11;
constexpr int kCells = kSize * kSize;

/// Fixed maze, version "pacman.maze.v1". '#' wall, '.' pellet, 'o' power
/// pellet, 'P' Pacman start (no pellet), 'G' ghost spawn (no pellet).
constexpr std::array<const char*, kSize> kMazeV1 = {
    "###########",
    "#P...#....#",
    "#.##.#.##.#",
    "#.........#",
    "#.##.#.##.#",
    "#....G....#",
    "#.##.#.##.#",
    "#.........#",
    "#.##.#.##.#",
    "#o...#...o#",
    "###########",
};

inline int cell_index(int x, int y) { return y * kSize + x; }
inline int cell_index(Pos p) { return cell_index(p.x, p.y); }
inline bool in_grid(Pos p) { return p.x >= 0 && p.x < kSize && p.y >= 0 && p.y < kSize; }
inline char maze_char(Pos p) { return kMazeV1[static_cast<size_t>(p.y)][static_cast<size_t>(p.x)]; }
inline bool wall(Pos p) { return !in_grid(p) || maze_char(p) == '#'; }

constexpr int kNumGhosts = 4;
constexpr int kFrightenedTicks = 20;
constexpr double kGhostNoise = 0.2;

enum class Action { North = 0, South = 1, East = 2, West = 3 };
constexpr int kNumActions = 4;

inline Pos move_target(Pos p, Action a) {
  switch (a) {
    case Action::North: return {p.x, p.y - 1};
    case Action::South: return {p.x, p.y + 1};
    case Action::East: return {p.x + 1, p.y};
    case Action::West: return {p.x - 1, p.y};
  }
  return p;
}

constexpr std::array<Action, 4> kDirOrder = {Action::North, Action::South,
                                             Action::East, Action::West};

struct Ghost {
  Pos pos;
  bool frightened = false;
};

struct State {
  Pos pacman;
  std::array<Ghost, kNumGhosts> ghosts;
  std::bitset<kCells> pellets;
  std::bitset<kCells> power;
  int frightened_ticks = 0;
  bool dead = false;
  int tick = 0;
  uint64_t seed = 0;
  uint64_t rng_state = 0;
};

struct StepEvents {
  bool ate_pellet = false;
  bool ate_power = false;
  int ghosts_eaten = 0;
  bool died = false;
  bool won = false;
  bool terminal = false;
};

inline Pos spawn_cell() {
  for (int y = 0; y < kSize; ++y) {
    for (int x = 0; x < kSize; ++x) {
      if (maze_char({x, y}) == 'G') return {x, y};
    }
  }
  throw std::logic_error("maze has no ghost spawn");
}

inline Pos start_cell() {
  for (int y = 0; y < kSize; ++y) {
    for (int x = 0; x < kSize; ++x) {
      if (maze_char({x, y}) == 'P') return {x, y};
    }
  }
  throw std::logic_error("maze has no Pacman start");
}

inline bool terminal(const State& s) { return s.dead || s.pellets.none(); }

inline State reset(uint64_t seed) {
  State s;
  s.seed = seed;
  s.rng_state = derive_seed(seed, 0x9acb);
  s.pacman = start_cell();
  Pos spawn = spawn_cell();
  for (Ghost& g : s.ghosts) g.pos = spawn;
  for (int y = 0; y < kSize; ++y) {
    for (int x = 0; x < kSize; ++x) {
      char c = maze_char({x, y});
      if (c == '.') s.pellets.set(static_cast<size_t>(cell_index(x, y)));
      if (c == 'o') {
        s.pellets.set(static_cast<size_t>(cell_index(x, y)));
        s.power.set(static_cast<size_t>(cell_index(x, y)));
      }
    }
  }
  return s;
}

/// BFS distances through the maze from `from`; unreachable cells get -1.
inline std::array<int, kCells> distances_from(Pos from) {
  std::array<int, kCells> dist;
  dist.fill(-1);
  std::queue<Pos> q;
  dist[static_cast<size_t>(cell_index(from))] = 0;
  q.push(from);
  while (!q.empty()) {
    Pos p = q.front();
    q.pop();
    for (Action a : kDirOrder) {
      Pos n = move_target(p, a);
      if (wall(n)) continue;
      int& d = dist[static_cast<size_t>(cell_index(n))];
      if (d < 0) {
        d = dist[static_cast<size_t>(cell_index(p))] + 1;
        q.push(n);
      }
    }
  }
  return dist;
}

namespace detail {

inline void resolve_contact(State& s, StepEvents& ev) {
  if (s.dead) return;
  Pos spawn = spawn_cell();
  for (Ghost& g : s.ghosts) {
    if (!(g.pos == s.pacman)) continue;
    if (g.frightened) {
      g.pos = spawn;
      g.frightened = false;
      ev.ghosts_eaten += 1;
    } else {
      s.dead = true;
      ev.died = true;
      return;
    }
  }
}

inline void move_ghosts(State& s) {
  Rng rng(0);
  rng.set_state(s.rng_state);
  std::array<int, kCells> to_pacman = distances_from(s.pacman);
  for (Ghost& g : s.ghosts) {
    std::vector<Pos> legal;
    for (Action a : kDirOrder) {
      Pos n = move_target(g.pos, a);
      if (!wall(n)) legal.push_back(n);
    }
    if (legal.empty()) continue;
    if (rng.chance(kGhostNoise)) {
      g.pos = legal[rng.below(legal.size())];
      continue;
    }
    Pos best = legal[0];
    int best_d = to_pacman[static_cast<size_t>(cell_index(legal[0]))];
    for (size_t i = 1; i < legal.size(); ++i) {
      int d = to_pacman[static_cast<size_t>(cell_index(legal[i]))];
      bool better = g.frightened ? d > best_d : d < best_d;
      if (better) {
        best = legal[i];
        best_d = d;
      }
    }
    g.pos = best;
  }
  s.rng_state = rng.state();
}

}  // namespace detail

inline StepEvents step(State& s, Action a) {
  if (terminal(s)) throw std::runtime_error("step on terminal episode");
  StepEvents ev;

  Pos target = move_target(s.pacman, a);
  if (!wall(target)) s.pacman = target;  // wall moves are position no-ops
  size_t cell = static_cast<size_t>(cell_index(s.pacman));
  if (s.pellets.test(cell)) {
    s.pellets.reset(cell);
    ev.ate_pellet = true;
    if (s.power.test(cell)) {
      s.power.reset(cell);
      ev.ate_power = true;
      s.frightened_ticks = kFrightenedTicks;
      for (Ghost& g : s.ghosts) g.frightened = true;
    }
  }
  detail::resolve_contact(s, ev);

  if (!s.dead) {
    detail::move_ghosts(s);
    detail::resolve_contact(s, ev);
  }

  if (s.frightened_ticks > 0) {
    s.frightened_ticks -= 1;
    if (s.frightened_ticks == 0) {
      for (Ghost& g : s.ghosts) g.frightened = false;
    }
  }

  s.tick += 1;
  ev.won = !s.dead && s.pellets.none();
  ev.terminal = terminal(s);
  return ev;
}

/// First direction (in N,S,E,W priority) of a shortest maze path from
/// Pacman's cell toward the nearest remaining pellet; all-zero if none.
inline int food_direction(const State& s) {
  if (s.pellets.none()) return -1;
  // Multi-source BFS from every pellet so ties collapse deterministically.
  std::array<int, kCells> dist;
  dist.fill(-1);
  std::queue<Pos> q;
  for (int i = 0; i < kCells; ++i) {
    if (s.pellets.test(static_cast<size_t>(i))) {
      dist[static_cast<size_t>(i)] = 0;
      q.push({i % kSize, i / kSize});
    }
  }
  while (!q.empty()) {
    Pos p = q.front();
    q.pop();
    for (Action a : kDirOrder) {
      Pos n = move_target(p, a);
      if (wall(n)) continue;
      int& d = dist[static_cast<size_t>(cell_index(n))];
      if (d < 0) {
        d = dist[static_cast<size_t>(cell_index(p))] + 1;
        q.push(n);
      }
    }
  }
  int here = dist[static_cast<size_t>(cell_index(s.pacman))];
  if (here <= 0) return -1;  // on-pellet states cannot occur after a step
  for (size_t i = 0; i < kDirOrder.size(); ++i) {
    Pos n = move_target(s.pacman, kDirOrder[i]);
    if (wall(n)) continue;
    if (dist[static_cast<size_t>(cell_index(n))] == here - 1) return static_cast<int>(i);
  }
  return -1;
}

constexpr int kGhostRadius = 3;

/// 13 flags: wall/ghost/food x N,S,E,W plus scared_ghost. Ghost flags fire
/// for every axis a nearby ghost (Manhattan distance <= 3) lies along; the
/// food flag marks the single next step toward the closest pellet.
inline FeatureVector encode(const State& s) {
  FeatureVector fv;
  fv.env = EnvId::Pacman;
  fv.values.assign(13, 0);
  for (size_t i = 0; i < kDirOrder.size(); ++i) {
    fv.values[i] = wall(move_target(s.pacman, kDirOrder[i])) ? 1 : 0;
  }
  for (const Ghost& g : s.ghosts) {
    int dx = g.pos.x - s.pacman.x;
    int dy = g.pos.y - s.pacman.y;
    if (std::abs(dx) + std::abs(dy) > kGhostRadius) continue;
    if (dy < 0) fv.values[4] = 1;  // north
    if (dy > 0) fv.values[5] = 1;  // south
    if (dx > 0) fv.values[6] = 1;  // east
    if (dx < 0) fv.values[7] = 1;  // west
  }
  int fd = food_direction(s);
  if (fd >= 0) fv.values[static_cast<size_t>(8 + fd)] = 1;
  for (const Ghost& g : s.ghosts) {
    if (g.frightened) fv.values[12] = 1;
  }
  return fv;
}

inline json to_json(const State& s) {
  json ghosts = json::array();
  for (const Ghost& g : s.ghosts) {
    ghosts.push_back({{"pos", {g.pos.x, g.pos.y}}, {"frightened", g.frightened}});
  }
  std::string pellets(kCells, '0');
  std::string power(kCells, '0');
  for (int i = 0; i < kCells; ++i) {
    if (s.pellets.test(static_cast<size_t>(i))) pellets[static_cast<size_t>(i)] = '1';
    if (s.power.test(static_cast<size_t>(i))) power[static_cast<size_t>(i)] = '1';
  }
  return json{{"pacman", {s.pacman.x, s.pacman.y}},
              {"ghosts", ghosts},
              {"pellets", pellets},
              {"power", power},
              {"frightened_ticks", s.frightened_ticks},
              {"dead", s.dead},
              {"tick", s.tick},
              {"seed", s.seed},
              {"rng_state", s.rng_state}};
}

inline State from_json(const json& j) {
  State s;
  s.pacman = {j.at("pacman").at(0).get<int>(), j.at("pacman").at(1).get<int>()};
  for (size_t i = 0; i < s.ghosts.size(); ++i) {
    const auto& g = j.at("ghosts").at(i);
    s.ghosts[i].pos = {g.at("pos").at(0).get<int>(), g.at("pos").at(1).get<int>()};
    s.ghosts[i].frightened = g.at("frightened").get<bool>();
  }
  std::string pellets = j.at("pellets").get<std::string>();
  std::string power = j.at("power").get<std::string>();
  for (int i = 0; i < kCells; ++i) {
    if (pellets[static_cast<size_t>(i)] == '1') s.pellets.set(static_cast<size_t>(i));
    if (power[static_cast<size_t>(i)] == '1') s.power.set(static_cast<size_t>(i));
  }
  s.frightened_ticks = j.at("frightened_ticks").get<int>();
  s.dead = j.at("dead").get<bool>();
  s.tick = j.at("tick").get<int>();
  s.seed = j.at("seed").get<uint64_t>();
  s.rng_state = j.at("rng_state").get<uint64_t>();
  return s;
}

}  // namespace xplain::pacman
