#pragma once

#include <array>
#include <queue>

#include "xplain/env/babyai.hpp"
#include "xplain/policy/intent.hpp"

namespace xplain::babyai_policy {

using babyai::Action;
using babyai::State;

namespace detail {

constexpr std::array<Action, 3> kExpansionOrder = {Action::Forward, Action::TurnLeft,
                                                   Action::TurnRight};

inline int node_id(Pos p, int heading) {
  return (p.y * babyai::kGrid + p.x) * 4 + heading;
}

}  // namespace detail

/// First action of a shortest turn/move sequence that ends with the agent
/// facing the red ball from an adjacent cell. Falls back to turning left when
/// the ball is walled off by distractors.
inline Action select_action(const State& s) {
  Pos ball = s.objects[static_cast<size_t>(s.goal_index)].pos;
  constexpr int kNodes = babyai::kGrid * babyai::kGrid * 4;
  std::array<int, kNodes> first_action;
  first_action.fill(-2);  // -2 unvisited, -1 start

  struct Node {
    Pos pos;
    int heading;
  };
  std::queue<Node> q;
  first_action[static_cast<size_t>(detail::node_id(s.agent, s.heading))] = -1;
  q.push({s.agent, s.heading});

  while (!q.empty()) {
    Node n = q.front();
    q.pop();
    int inherited = first_action[static_cast<size_t>(detail::node_id(n.pos, n.heading))];
    for (Action a : detail::kExpansionOrder) {
      Node next = n;
      switch (a) {
        case Action::TurnLeft: next.heading = (n.heading + 3) % 4; break;
        case Action::TurnRight: next.heading = (n.heading + 1) % 4; break;
        case Action::Forward: {
          Pos d = babyai::heading_delta(n.heading);
          Pos target{n.pos.x + d.x, n.pos.y + d.y};
          if (babyai::in_grid(target) && !babyai::object_at(s, target)) next.pos = target;
          break;
        }
      }
      int id = detail::node_id(next.pos, next.heading);
      if (first_action[static_cast<size_t>(id)] != -2) continue;
      int first = inherited == -1 ? static_cast<int>(a) : inherited;
      first_action[static_cast<size_t>(id)] = first;
      Pos d = babyai::heading_delta(next.heading);
      if (Pos{next.pos.x + d.x, next.pos.y + d.y} == ball) {
        return static_cast<Action>(first);
      }
      q.push(next);
    }
  }
  return Action::TurnLeft;
}

struct ActResult {
  Action action;
  IntentRecord intent;
};

inline ActResult act(const State& s) {
  Action a = select_action(s);
  IntentRecord intent;
  intent.strategy = Behavior::BabyaiGoto;
  intent.category = GoalCategory::RedBall;
  intent.goal = s.objects[static_cast<size_t>(s.goal_index)].pos;
  State probe = s;
  babyai::step(probe, a);
  intent.horizon = babyai::terminal(probe) ? Horizon::ShortTerm : Horizon::LongTerm;
  return {a, intent};
}

}  // namespace xplain::babyai_policy
