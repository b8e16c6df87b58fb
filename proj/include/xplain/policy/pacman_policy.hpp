#pragma once

#include <cstdlib>
#include <optional>

#include "xplain/env/pacman.hpp"
#include "xplain/policy/intent.hpp"

namespace xplain::pacman_policy {

using pacman::Action;
using pacman::State;

struct Choice {
  Action action = Action::North;
  GoalCategory category = GoalCategory::Pellet;
  std::optional<Pos> goal;
};

namespace detail {

inline Action first_step_toward(const State& s, Pos target) {
  auto dist = pacman::distances_from(target);
  int here = dist[static_cast<size_t>(pacman::cell_index(s.pacman))];
  for (Action a : pacman::kDirOrder) {
    Pos n = pacman::move_target(s.pacman, a);
    if (pacman::wall(n)) continue;
    if (here > 0 && dist[static_cast<size_t>(pacman::cell_index(n))] == here - 1) return a;
  }
  for (Action a : pacman::kDirOrder) {
    if (!pacman::wall(pacman::move_target(s.pacman, a))) return a;
  }
  return Action::North;
}

inline Action flee_step(const State& s, Pos threat) {
  auto dist = pacman::distances_from(threat);
  std::optional<Action> best;
  int best_d = -1;
  for (Action a : pacman::kDirOrder) {
    Pos n = pacman::move_target(s.pacman, a);
    if (pacman::wall(n)) continue;
    int d = dist[static_cast<size_t>(pacman::cell_index(n))];
    if (!best || d > best_d) {
      best = a;
      best_d = d;
    }
  }
  return best ? *best : Action::North;
}

}  // namespace detail

/// Greedy pellet pursuit: chase frightened ghosts when any are active, back
/// away from normal ghosts within a 3-cell radius, otherwise head for the
/// closest pellet.
inline Choice select_action(const State& s) {
  auto from_pacman = pacman::distances_from(s.pacman);

  std::optional<Pos> chase;
  int chase_d = 0;
  for (const pacman::Ghost& g : s.ghosts) {
    if (!g.frightened) continue;
    int d = from_pacman[static_cast<size_t>(pacman::cell_index(g.pos))];
    if (d < 0) continue;
    if (!chase || d < chase_d) {
      chase = g.pos;
      chase_d = d;
    }
  }
  if (chase) {
    return {detail::first_step_toward(s, *chase), GoalCategory::FrightenedGhost, chase};
  }

  std::optional<Pos> threat;
  int threat_d = 0;
  for (const pacman::Ghost& g : s.ghosts) {
    if (g.frightened) continue;
    int d = std::abs(g.pos.x - s.pacman.x) + std::abs(g.pos.y - s.pacman.y);
    if (d > pacman::kGhostRadius) continue;
    if (!threat || d < threat_d) {
      threat = g.pos;
      threat_d = d;
    }
  }
  if (threat) {
    return {detail::flee_step(s, *threat), GoalCategory::AvoidGhost, threat};
  }

  std::optional<Pos> pellet;
  int pellet_d = 0;
  for (int i = 0; i < pacman::kCells; ++i) {
    if (!s.pellets.test(static_cast<size_t>(i))) continue;
    int d = from_pacman[static_cast<size_t>(i)];
    if (d < 0) continue;
    if (!pellet || d < pellet_d) {
      pellet = Pos{i % pacman::kSize, i / pacman::kSize};
      pellet_d = d;
    }
  }
  if (pellet) {
    GoalCategory cat = s.power.test(static_cast<size_t>(pacman::cell_index(*pellet)))
                           ? GoalCategory::PowerPellet
                           : GoalCategory::Pellet;
    return {detail::first_step_toward(s, *pellet), cat, pellet};
  }

  Choice c;
  c.action = detail::first_step_toward(s, s.pacman);
  c.category = GoalCategory::FixedPath;
  return c;
}

struct ActResult {
  Action action;
  IntentRecord intent;
};

inline ActResult act(const State& s) {
  Choice c = select_action(s);
  IntentRecord intent;
  intent.strategy = Behavior::PacmanHeuristic;
  intent.category = c.category;
  intent.goal = c.goal;
  intent.horizon = Horizon::LongTerm;
  if (c.goal && c.category != GoalCategory::AvoidGhost &&
      pacman::move_target(s.pacman, c.action) == *c.goal) {
    intent.horizon = Horizon::ShortTerm;
  }
  return {c.action, intent};
}

}  // namespace xplain::pacman_policy
