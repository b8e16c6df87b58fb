#pragma once

#include "xplain/br/decision_path.hpp"
#include "xplain/br/phrase_table.hpp"
#include "xplain/env/env.hpp"

namespace xplain {

struct RenderedBR {
  Method method = Method::NoBR;
  std::string text;
};

namespace detail {

inline std::string offset_amount(int magnitude) {
  return std::to_string(magnitude) + (magnitude == 1 ? " grid cell" : " grid cells");
}

}  // namespace detail

/// One sentence per rule, in traversal order. Binary features speak to the
/// side of the split that was taken; offset and enum features speak to the
/// observed value itself, matching how the prompt examples describe states.
inline RenderedBR render_path(const DecisionPath& path, const PhraseTable& table) {
  const FeatureManifest& manifest = manifest_for(table.env());
  if (manifest.id != path.manifest_id) {
    throw std::runtime_error("path/manifest mismatch: " + path.manifest_id);
  }
  std::string out;
  for (const PathRule& rule : path.rules) {
    const FeatureSpec& spec = manifest.features[static_cast<size_t>(rule.feature)];
    const PhrasePair& phrase = table.at(spec.name);
    std::string line;
    switch (spec.kind) {
      case FeatureKind::Binary:
        line = rule.satisfied_gt ? phrase.positive : phrase.negative;
        break;
      case FeatureKind::Offset: {
        line = rule.value >= 0 ? phrase.positive : phrase.negative;
        replace_all(line, "{offset}", detail::offset_amount(std::abs(rule.value)));
        break;
      }
      case FeatureKind::Enum: {
        line = phrase.positive;
        replace_all(line, "{word}", spec.words.at(static_cast<size_t>(rule.value)));
        break;
      }
    }
    if (!out.empty()) out += "\n";
    out += line;
  }
  return {Method::Path, out};
}

/// Raw observation block in the per-environment vector notation.
inline std::string observation_block(const EnvState& s) {
  FeatureVector fv = encode_state(s);
  std::string out = "Observation:";
  switch (env_of(s)) {
    case EnvId::Usar: {
      for (int x = 0; x < usar::kWidth; ++x) {
        for (int y = 0; y < usar::kHeight; ++y) {
          size_t base = static_cast<size_t>(usar::room_index(x, y)) * 5;
          out += "\nRoom " + coord({x, y}) + ": [" + std::to_string(fv.values[base]) + ", " +
                 std::to_string(fv.values[base + 1]) + ", " +
                 std::to_string(fv.values[base + 2]) + ", " +
                 std::to_string(fv.values[base + 3]) + ", " +
                 std::to_string(fv.values[base + 4]) + "]";
        }
      }
      return out;
    }
    case EnvId::Pacman: {
      const FeatureManifest& manifest = manifest_for(EnvId::Pacman);
      for (size_t i = 0; i < fv.values.size(); ++i) {
        out += "\n" + manifest.features[i].name + ":" +
               (fv.values[i] != 0 ? "True" : "False");
      }
      return out;
    }
    case EnvId::Babyai: {
      for (int k = 0; k < babyai::kObjects; ++k) {
        size_t base = static_cast<size_t>(k) * 4;
        out += "\nObject " + std::to_string(k) + ": [" + std::to_string(fv.values[base]) +
               ", " + std::to_string(fv.values[base + 1]) + ", " +
               std::to_string(fv.values[base + 2]) + ", " +
               std::to_string(fv.values[base + 3]) + "]";
      }
      return out;
    }
  }
  throw std::logic_error("bad EnvId");
}

inline std::string action_header(EnvId env, Role role) {
  if (env == EnvId::Usar) return "Action taken by the " + to_string(role) + ":";
  return "Action:";
}

/// Support pair for the State method: a state plus the action sentence the
/// expert produced there.
struct SupportPair {
  EnvState state;
  std::string action_text;
};

/// State method: recent observation-action pairs, then the query observation.
/// NoBR: the query observation alone (support pairs are rejected).
inline RenderedBR render_state(const EnvState& query, Method method,
                               const std::vector<SupportPair>& support, Role role) {
  if (method == Method::Path) {
    throw std::runtime_error("render_state does not build Path representations");
  }
  if (method == Method::NoBR && !support.empty()) {
    throw std::runtime_error("NoBR takes no support pairs");
  }
  if (method == Method::State && support.empty()) {
    throw std::runtime_error("State requires at least one support pair");
  }
  std::string out;
  EnvId env = env_of(query);
  for (const SupportPair& pair : support) {
    out += observation_block(pair.state) + "\n\n" + action_header(env, role) + "\n\n" +
           pair.action_text + "\n\n";
  }
  out += observation_block(query);
  return {method, out};
}

}  // namespace xplain
