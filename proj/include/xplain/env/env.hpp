#pragma once

#include <variant>

#include "xplain/env/babyai.hpp"
#include "xplain/env/pacman.hpp"
#include "xplain/env/usar.hpp"

namespace xplain {

using EnvState = std::variant<usar::State, pacman::State, babyai::State>;

inline EnvId env_of(const EnvState& s) {
  if (std::holds_alternative<usar::State>(s)) return EnvId::Usar;
  if (std::holds_alternative<pacman::State>(s)) return EnvId::Pacman;
  return EnvId::Babyai;
}

inline EnvState reset_env(EnvId env, uint64_t seed) {
  switch (env) {
    case EnvId::Usar: return usar::reset(seed);
    case EnvId::Pacman: return pacman::reset(seed);
    case EnvId::Babyai: return babyai::reset(seed);
  }
  throw std::logic_error("bad EnvId");
}

inline bool env_terminal(const EnvState& s) {
  return std::visit([](const auto& st) { return terminal(st); }, s);
}

inline FeatureVector encode_state(const EnvState& s) {
  return std::visit([](const auto& st) { return encode(st); }, s);
}

inline json state_to_json(const EnvState& s) {
  return std::visit([](const auto& st) { return to_json(st); }, s);
}

inline EnvState state_from_json(EnvId env, const json& j) {
  switch (env) {
    case EnvId::Usar: return usar::from_json(j);
    case EnvId::Pacman: return pacman::from_json(j);
    case EnvId::Babyai: return babyai::from_json(j);
  }
  throw std::logic_error("bad EnvId");
}

inline int num_actions(EnvId env) {
  switch (env) {
    case EnvId::Usar: return usar::kNumActions;
    case EnvId::Pacman: return pacman::kNumActions;
    case EnvId::Babyai: return babyai::kNumActions;
  }
  throw std::logic_error("bad EnvId");
}

/// Serialized action names, e.g. "engineer_east", "medic_rescue", "north",
/// "turn_left".
inline std::string action_name(EnvId env, Role role, int action) {
  static const char* dirs[4] = {"north", "south", "east", "west"};
  switch (env) {
    case EnvId::Usar: {
      std::string prefix = to_string(role) + "_";
      if (action < 4) return prefix + dirs[action];
      return prefix + (role == Role::Engineer ? "remove_rubble" : "rescue");
    }
    case EnvId::Pacman:
      return dirs[action];
    case EnvId::Babyai: {
      static const char* names[3] = {"turn_left", "turn_right", "forward"};
      return names[action];
    }
  }
  throw std::logic_error("bad EnvId");
}

inline int action_from_name(EnvId env, const std::string& name) {
  for (int a = 0; a < num_actions(env); ++a) {
    for (Role r : {Role::Medic, Role::Engineer, Role::Solo}) {
      if (action_name(env, r, a) == name) return a;
    }
  }
  throw std::runtime_error("unknown action name: " + name);
}

}  // namespace xplain
