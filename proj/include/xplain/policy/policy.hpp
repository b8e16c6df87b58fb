#pragma once

#include "xplain/env/env.hpp"
#include "xplain/policy/babyai_policy.hpp"
#include "xplain/policy/pacman_policy.hpp"
#include "xplain/policy/usar_policy.hpp"

namespace xplain {

struct PolicyResult {
  int action = 0;
  IntentRecord intent;
};

/// Expert action id only (no lookahead); the hot path for rollouts.
inline int policy_action(const EnvState& s, Role role, Behavior b) {
  switch (env_of(s)) {
    case EnvId::Usar:
      return static_cast<int>(
          usar_policy::select_action(std::get<usar::State>(s), role, b).action);
    case EnvId::Pacman:
      return static_cast<int>(pacman_policy::select_action(std::get<pacman::State>(s)).action);
    case EnvId::Babyai:
      return static_cast<int>(babyai_policy::select_action(std::get<babyai::State>(s)));
  }
  throw std::logic_error("bad EnvId");
}

/// Expert action plus the intent record (strategy, category, goal, horizon).
inline PolicyResult policy_act(const EnvState& s, Role role, Behavior b) {
  switch (env_of(s)) {
    case EnvId::Usar: {
      auto r = usar_policy::act(std::get<usar::State>(s), role, b);
      return {static_cast<int>(r.action), r.intent};
    }
    case EnvId::Pacman: {
      auto r = pacman_policy::act(std::get<pacman::State>(s));
      return {static_cast<int>(r.action), r.intent};
    }
    case EnvId::Babyai: {
      auto r = babyai_policy::act(std::get<babyai::State>(s));
      return {static_cast<int>(r.action), r.intent};
    }
  }
  throw std::logic_error("bad EnvId");
}

inline Horizon classify_state(const EnvState& s, Role role, Behavior b) {
  if (env_of(s) == EnvId::Usar) {
    return usar_policy::classify_state(std::get<usar::State>(s), role, b);
  }
  return policy_act(s, role, b).intent.horizon;
}

/// Advances one tick with the focal agent forced to `action`; in USAR the
/// other agent plays its expert policy for the same behavior.
inline void env_advance(EnvState& s, Role focal, int action, Behavior b) {
  switch (env_of(s)) {
    case EnvId::Usar: {
      auto& st = std::get<usar::State>(s);
      Role other = other_role(focal);
      int other_action = static_cast<int>(usar_policy::select_action(st, other, b).action);
      int eng = focal == Role::Engineer ? action : other_action;
      int med = focal == Role::Medic ? action : other_action;
      usar::step(st, static_cast<usar::Action>(eng), static_cast<usar::Action>(med));
      return;
    }
    case EnvId::Pacman:
      pacman::step(std::get<pacman::State>(s), static_cast<pacman::Action>(action));
      return;
    case EnvId::Babyai:
      babyai::step(std::get<babyai::State>(s), static_cast<babyai::Action>(action));
      return;
  }
  throw std::logic_error("bad EnvId");
}

/// One sentence describing the action, in the prompt house style.
inline std::string action_text(const EnvState& s, Role role, int action) {
  switch (env_of(s)) {
    case EnvId::Usar: {
      const auto& st = std::get<usar::State>(s);
      Pos pos = role == Role::Engineer ? st.engineer : st.medic;
      std::string who = to_string(role);
      if (action == static_cast<int>(usar::Action::Interact)) {
        if (role == Role::Engineer) {
          return who + " removes the rubble in room " + coord(pos) + ".";
        }
        return who + " rescues the victim in room " + coord(pos) + ".";
      }
      static const char* dirs[4] = {"north", "south", "east", "west"};
      Pos target = usar::move_target(pos, static_cast<usar::Action>(action));
      if (!usar::in_grid(target)) target = pos;
      return who + " moves " + dirs[action] + " to room " + coord(target) + ".";
    }
    case EnvId::Pacman: {
      static const char* dirs[4] = {"north", "south", "east", "west"};
      return std::string("Pacman moves ") + dirs[action] + ".";
    }
    case EnvId::Babyai: {
      static const char* texts[3] = {"The agent turns left.", "The agent turns right.",
                                     "The agent moves forward."};
      return texts[action];
    }
  }
  throw std::logic_error("bad EnvId");
}

inline std::vector<Role> roles_for(EnvId env) {
  if (env == EnvId::Usar) return {Role::Medic, Role::Engineer};
  return {Role::Solo};
}

inline std::vector<Behavior> behaviors_for(EnvId env) {
  switch (env) {
    case EnvId::Usar: return {Behavior::Search, Behavior::Rescue, Behavior::Fixed};
    case EnvId::Pacman: return {Behavior::PacmanHeuristic};
    case EnvId::Babyai: return {Behavior::BabyaiGoto};
  }
  throw std::logic_error("bad EnvId");
}

}  // namespace xplain
