#pragma once

#include <map>

#include "xplain/core/assets.hpp"
#include "xplain/policy/policy.hpp"

namespace xplain {

namespace detail {

inline std::map<std::string, std::string> parse_template_table(const std::string& text) {
  std::map<std::string, std::string> out;
  for (const std::string& line : split(text, '\n')) {
    if (line.empty() || line[0] == '#') continue;
    auto cols = split(line, '\t');
    if (cols.size() != 2) throw std::runtime_error("bad template line: " + line);
    out[cols[0]] = cols[1];
  }
  return out;
}

inline std::string grid_cells(int n) {
  return std::to_string(n) + (n == 1 ? " grid cell" : " grid cells");
}

/// "2 grid cells in front and 1 grid cell left" for a rotated-frame offset.
inline std::string offset_description(Pos rel) {
  std::vector<std::string> parts;
  if (rel.y != 0) {
    parts.push_back(grid_cells(std::abs(rel.y)) + (rel.y > 0 ? " in front" : " behind"));
  }
  if (rel.x != 0) {
    parts.push_back(grid_cells(std::abs(rel.x)) + (rel.x > 0 ? " left" : " right"));
  }
  if (parts.empty()) return "on the agent's cell";
  if (parts.size() == 1) return parts[0];
  return parts[0] + " and " + parts[1];
}

}  // namespace detail

/// Renders the expert's intent into the fixed ground-truth sentence used by
/// the judge and by keyword scoring.
inline std::string ground_truth_text(const AssetStore& assets, const EnvState& s,
                                     Role role, int action, const IntentRecord& intent) {
  EnvId env = env_of(s);
  auto table =
      detail::parse_template_table(assets.text("gt_templates/" + to_string(env) + ".v1.txt"));
  static const char* dirs[4] = {"north", "south", "east", "west"};

  std::string key;
  switch (env) {
    case EnvId::Usar:
      if (intent.category == GoalCategory::FixedPath) {
        key = "fixed_path";
      } else if (action == static_cast<int>(usar::Action::Interact)) {
        key = "interact." + to_string(intent.category);
      } else {
        key = "move." + to_string(intent.category);
      }
      break;
    case EnvId::Pacman:
      key = to_string(intent.category);
      break;
    case EnvId::Babyai:
      key = action_name(env, role, action);
      break;
  }
  auto it = table.find(key);
  if (it == table.end()) {
    throw std::runtime_error("missing ground-truth template: " + key);
  }
  std::string text = it->second;
  replace_all(text, "{role}", to_string(role));
  replace_all(text, "{strategy}", to_string(intent.strategy));
  if (action >= 0 && action < 4) replace_all(text, "{direction}", dirs[action]);
  if (intent.goal) replace_all(text, "{goal}", coord(*intent.goal));
  if (env == EnvId::Babyai) {
    const auto& st = std::get<babyai::State>(s);
    Pos rel = babyai::relative_offset(st, st.objects[static_cast<size_t>(st.goal_index)].pos);
    replace_all(text, "{offset_desc}", detail::offset_description(rel));
  }
  return text;
}

}  // namespace xplain
