#pragma once

#include <cstdlib>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>

#include "xplain/core/util.hpp"

namespace xplain {

/// Locates the versioned asset tree (prompt parts, phrase tables, criteria,
/// templates). Resolution order: explicit path, XPLAIN_ASSETS_DIR, ./assets,
/// then the tree the binary was built from.
inline std::string default_assets_dir() {
  if (const char* env = std::getenv("XPLAIN_ASSETS_DIR")) return env;
  if (std::filesystem::exists("assets/prompts")) return "assets";
#ifdef XPLAIN_SOURCE_ASSETS
  return XPLAIN_SOURCE_ASSETS;
#else
  return "assets";
#endif
}

class AssetStore {
 public:
  explicit AssetStore(std::string root = default_assets_dir()) : root_(std::move(root)) {}

  const std::string& root() const { return root_; }

  /// Loads and caches an asset file. Failures name the offending path.
  const std::string& text(const std::string& relative) const {
    auto it = cache_.find(relative);
    if (it != cache_.end()) return it->second;
    std::string full = root_ + "/" + relative;
    if (!std::filesystem::exists(full)) {
      throw std::runtime_error("missing asset: " + full);
    }
    auto [ins, _] = cache_.emplace(relative, read_file(full));
    return ins->second;
  }

  bool exists(const std::string& relative) const {
    return std::filesystem::exists(root_ + "/" + relative);
  }

 private:
  std::string root_;
  mutable std::map<std::string, std::string> cache_;
};

}  // namespace xplain
