#pragma once

#include <map>

#include "xplain/core/assets.hpp"
#include "xplain/env/feature_manifest.hpp"

namespace xplain {

struct PhrasePair {
  std::string positive;
  std::string negative;
};

/// Per-feature sentence templates loaded from phrases/<env>.v1.tsv
/// (columns: feature_name, positive_phrase, negative_phrase).
class PhraseTable {
 public:
  static PhraseTable load(const AssetStore& assets, EnvId env) {
    PhraseTable table;
    table.env_ = env;
    const std::string& text = assets.text("phrases/" + to_string(env) + ".v1.tsv");
    for (const std::string& line : split(text, '\n')) {
      if (line.empty() || line[0] == '#') continue;
      auto cols = split(line, '\t');
      if (cols.size() != 3) throw std::runtime_error("bad phrase line: " + line);
      table.entries_[cols[0]] = PhrasePair{cols[1], cols[2]};
    }
    return table;
  }

  const PhrasePair& at(const std::string& feature_name) const {
    auto it = entries_.find(feature_name);
    if (it == entries_.end()) {
      throw std::runtime_error("missing phrase-table entry: " + feature_name);
    }
    return it->second;
  }

  EnvId env() const { return env_; }
  size_t size() const { return entries_.size(); }

 private:
  EnvId env_ = EnvId::Usar;
  std::map<std::string, PhrasePair> entries_;
};

}  // namespace xplain
