#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "xplain/core/types.hpp"
#include "xplain/core/util.hpp"

namespace xplain {

/// How a feature's integer value should be read.
enum class FeatureKind {
  Binary,  // 0/1 flag
  Offset,  // signed grid offset
  Enum,    // index into a word list
};

struct FeatureSpec {
  std::string name;
  FeatureKind kind = FeatureKind::Binary;
  std::vector<std::string> words;  // Enum features only
};

/// Ordered feature schema for one environment. The id doubles as the version
/// stamp written into datasets and serialized trees so mismatched artifacts
/// fail loudly instead of silently misreading columns.
struct FeatureManifest {
  std::string id;
  EnvId env = EnvId::Usar;
  std::vector<FeatureSpec> features;

  size_t size() const { return features.size(); }

  int index_of(const std::string& name) const {
    for (size_t i = 0; i < features.size(); ++i) {
      if (features[i].name == name) return static_cast<int>(i);
    }
    throw std::runtime_error("unknown feature name: " + name);
  }

  json to_json() const {
    json j;
    j["id"] = id;
    j["env"] = to_string(env);
    json feats = json::array();
    for (const auto& f : features) {
      json spec;
      spec["name"] = f.name;
      spec["kind"] = f.kind == FeatureKind::Binary  ? "binary"
                     : f.kind == FeatureKind::Offset ? "offset"
                                                     : "enum";
      if (!f.words.empty()) spec["words"] = f.words;
      feats.push_back(spec);
    }
    j["features"] = feats;
    return j;
  }
};

/// One encoded observation, aligned with a manifest by env id.
struct FeatureVector {
  EnvId env = EnvId::Usar;
  std::vector<int> values;
};

namespace detail {

inline FeatureManifest build_usar_manifest() {
  FeatureManifest m;
  m.id = "features.usar.v1";
  m.env = EnvId::Usar;
  static const char* slots[5] = {"explored", "victim", "rubble", "engineer", "medic"};
  for (int x = 0; x < 4; ++x) {
    for (int y = 0; y < 5; ++y) {
      for (const char* slot : slots) {
        FeatureSpec f;
        f.name = "room_" + std::to_string(x) + "_" + std::to_string(y) + "_" + slot;
        f.kind = FeatureKind::Binary;
        m.features.push_back(f);
      }
    }
  }
  return m;
}

inline FeatureManifest build_pacman_manifest() {
  FeatureManifest m;
  m.id = "features.pacman.v1";
  m.env = EnvId::Pacman;
  static const char* dirs[4] = {"north", "south", "east", "west"};
  for (const char* group : {"wall", "ghost", "food"}) {
    for (const char* d : dirs) {
      FeatureSpec f;
      f.name = std::string(group) + "_" + d;
      m.features.push_back(f);
    }
  }
  FeatureSpec scared;
  scared.name = "scared_ghost";
  m.features.push_back(scared);
  return m;
}

inline FeatureManifest build_babyai_manifest() {
  FeatureManifest m;
  m.id = "features.babyai.v1";
  m.env = EnvId::Babyai;
  for (int k = 0; k < 5; ++k) {
    std::string base = "obj" + std::to_string(k) + "_";
    FeatureSpec fx{base + "x", FeatureKind::Offset, {}};
    FeatureSpec fy{base + "y", FeatureKind::Offset, {}};
    FeatureSpec ft{base + "type", FeatureKind::Enum, {"key", "ball", "box"}};
    FeatureSpec fc{base + "color",
                   FeatureKind::Enum,
                   {"red", "green", "blue", "purple", "yellow", "grey"}};
    m.features.push_back(fx);
    m.features.push_back(fy);
    m.features.push_back(ft);
    m.features.push_back(fc);
  }
  return m;
}

}  // namespace detail

inline const FeatureManifest& manifest_for(EnvId env) {
  static const FeatureManifest usar = detail::build_usar_manifest();
  static const FeatureManifest pacman = detail::build_pacman_manifest();
  static const FeatureManifest babyai = detail::build_babyai_manifest();
  switch (env) {
    case EnvId::Usar: return usar;
    case EnvId::Pacman: return pacman;
    case EnvId::Babyai: return babyai;
  }
  throw std::logic_error("bad EnvId");
}

inline int feature_value(const FeatureVector& fv, const std::string& name) {
  return fv.values.at(static_cast<size_t>(manifest_for(fv.env).index_of(name)));
}

}  // namespace xplain
