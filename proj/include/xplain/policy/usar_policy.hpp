#pragma once

#include <cstdlib>
#include <optional>

#include "xplain/env/usar.hpp"
#include "xplain/policy/intent.hpp"

namespace xplain::usar_policy {

using usar::Action;
using usar::State;

/// Patrol route for the Fixed behavior, a pure function of the agent's own
/// room: a north-south serpentine lap over the two western columns (down
/// column 0, back up column 1). Agents elsewhere head north to the top row,
/// then west along it to join the lap.
inline Action fixed_action(Pos p) {
  if (p.x == 0) return p.y < 4 ? Action::South : Action::East;
  if (p.y == 0) return Action::West;
  return Action::North;
}

struct Choice {
  Action action = Action::North;
  GoalCategory category = GoalCategory::FixedPath;
  std::optional<Pos> goal;
};

namespace detail {

inline int manhattan(Pos a, Pos b) { return std::abs(a.x - b.x) + std::abs(a.y - b.y); }

/// Nearest room satisfying pred; ties resolved lexicographically by (y, x).
template <typename Pred>
std::optional<Pos> nearest_room(const State& s, Pos from, Pred pred) {
  std::optional<Pos> best;
  int best_d = 0;
  for (int y = 0; y < usar::kHeight; ++y) {
    for (int x = 0; x < usar::kWidth; ++x) {
      Pos p{x, y};
      if (!pred(s.room_at(p))) continue;
      int d = manhattan(from, p);
      if (!best || d < best_d) {
        best = p;
        best_d = d;
      }
    }
  }
  return best;
}

/// First move of a shortest path, preferring N, S, E, W in that order.
inline Action move_toward(Pos from, Pos to) {
  if (to.y < from.y) return Action::North;
  if (to.y > from.y) return Action::South;
  if (to.x > from.x) return Action::East;
  return Action::West;
}

inline Choice duty_choice(const State& s, Role role, Pos pos) {
  if (role == Role::Engineer) {
    auto target = nearest_room(s, pos, [](const usar::Room& r) {
      return r.explored && r.rubble;
    });
    if (target) {
      if (*target == pos) return {Action::Interact, GoalCategory::Rubble, pos};
      return {move_toward(pos, *target), GoalCategory::Rubble, target};
    }
  } else {
    auto target = nearest_room(s, pos, [](const usar::Room& r) {
      return r.explored && r.victim;
    });
    if (target) {
      if (*target == pos) return {Action::Interact, GoalCategory::Victim, pos};
      return {move_toward(pos, *target), GoalCategory::Victim, target};
    }
  }
  return {fixed_action(pos), GoalCategory::FixedPath, std::nullopt};
}

inline Choice explore_choice(const State& s, Pos pos) {
  auto target = nearest_room(s, pos, [](const usar::Room& r) { return !r.explored; });
  if (!target) return {fixed_action(pos), GoalCategory::FixedPath, std::nullopt};
  return {detail::move_toward(pos, *target), GoalCategory::UnexploredRoom, target};
}

}  // namespace detail

/// Action selection without the horizon tag (which needs lookahead and is
/// filled in by classify_state).
inline Choice select_action(const State& s, Role role, Behavior b) {
  Pos pos = role == Role::Engineer ? s.engineer : s.medic;
  switch (b) {
    case Behavior::Fixed:
      return {fixed_action(pos), GoalCategory::FixedPath, std::nullopt};
    case Behavior::Search: {
      auto target =
          detail::nearest_room(s, pos, [](const usar::Room& r) { return !r.explored; });
      if (target) {
        return {detail::move_toward(pos, *target), GoalCategory::UnexploredRoom, target};
      }
      return detail::duty_choice(s, role, pos);
    }
    case Behavior::Rescue: {
      Choice duty = detail::duty_choice(s, role, pos);
      if (duty.category != GoalCategory::FixedPath) return duty;
      return detail::explore_choice(s, pos);
    }
    default:
      throw std::runtime_error("behavior not defined for usar");
  }
}

namespace detail {

inline State advance(const State& s, Behavior b) {
  State next = s;
  usar::step(next, select_action(s, Role::Engineer, b).action,
             select_action(s, Role::Medic, b).action);
  return next;
}

}  // namespace detail

/// Horizon bucketing. Ambiguous: Search and Rescue agree on the current
/// action but disagree one step later (each branch simulated under its own
/// behavior for both agents). Otherwise short-term when the current action
/// completes the goal (interacting, or stepping into the goal room).
inline Horizon classify_state(const State& s, Role role, Behavior b) {
  if (b != Behavior::Fixed) {
    Choice a_search = select_action(s, role, Behavior::Search);
    Choice a_rescue = select_action(s, role, Behavior::Rescue);
    if (a_search.action == a_rescue.action) {
      State next_search = detail::advance(s, Behavior::Search);
      State next_rescue = detail::advance(s, Behavior::Rescue);
      Action n_search = usar::terminal(next_search)
                            ? a_search.action
                            : select_action(next_search, role, Behavior::Search).action;
      Action n_rescue = usar::terminal(next_rescue)
                            ? a_rescue.action
                            : select_action(next_rescue, role, Behavior::Rescue).action;
      if (n_search != n_rescue) return Horizon::Ambiguous;
    }
  }
  Choice c = select_action(s, role, b);
  if (c.action == Action::Interact) return Horizon::ShortTerm;
  if (c.goal) {
    Pos pos = role == Role::Engineer ? s.engineer : s.medic;
    if (usar::move_target(pos, c.action) == *c.goal) return Horizon::ShortTerm;
  }
  return Horizon::LongTerm;
}

struct ActResult {
  Action action;
  IntentRecord intent;
};

inline ActResult act(const State& s, Role role, Behavior b) {
  Choice c = select_action(s, role, b);
  IntentRecord intent;
  intent.strategy = b;
  intent.category = c.category;
  intent.goal = c.goal;
  intent.horizon = classify_state(s, role, b);
  return {c.action, intent};
}

}  // namespace xplain::usar_policy
