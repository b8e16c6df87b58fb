#pragma once

#include <stdexcept>
#include <string>

namespace xplain {

struct Pos {
  int x = 0;
  int y = 0;
  bool operator==(const Pos&) const = default;
};

/// Grid coordinate rendered as "(x, y)" — the single formatting used by every
/// generated sentence.
inline std::string coord(const Pos& p) {
  return "(" + std::to_string(p.x) + ", " + std::to_string(p.y) + ")";
}

enum class EnvId { Usar, Pacman, Babyai };

inline std::string to_string(EnvId e) {
  switch (e) {
    case EnvId::Usar: return "usar";
    case EnvId::Pacman: return "pacman";
    case EnvId::Babyai: return "babyai";
  }
  throw std::logic_error("bad EnvId");
}

inline EnvId env_from_string(const std::string& s) {
  if (s == "usar") return EnvId::Usar;
  if (s == "pacman") return EnvId::Pacman;
  if (s == "babyai") return EnvId::Babyai;
  throw std::runtime_error("unknown env: " + s);
}

enum class Role { Medic, Engineer, Solo };

inline std::string to_string(Role r) {
  switch (r) {
    case Role::Medic: return "medic";
    case Role::Engineer: return "engineer";
    case Role::Solo: return "solo";
  }
  throw std::logic_error("bad Role");
}

inline Role role_from_string(const std::string& s) {
  if (s == "medic") return Role::Medic;
  if (s == "engineer") return Role::Engineer;
  if (s == "solo") return Role::Solo;
  throw std::runtime_error("unknown role: " + s);
}

inline Role other_role(Role r) {
  if (r == Role::Medic) return Role::Engineer;
  if (r == Role::Engineer) return Role::Medic;
  return Role::Solo;
}

/// How the agent's behavior is summarized for the language model.
enum class Method { Path, State, NoBR };

inline std::string to_string(Method m) {
  switch (m) {
    case Method::Path: return "path";
    case Method::State: return "state";
    case Method::NoBR: return "nobr";
  }
  throw std::logic_error("bad Method");
}

inline Method method_from_string(const std::string& s) {
  if (s == "path") return Method::Path;
  if (s == "state") return Method::State;
  if (s == "nobr") return Method::NoBR;
  throw std::runtime_error("unknown method: " + s);
}

}  // namespace xplain
