#pragma once

#include <array>

#include "xplain/br/render.hpp"
#include "xplain/core/assets.hpp"

namespace xplain {

/// Four-part prompt: environment description, representation description,
/// worked examples, query. Parts are joined with blank lines; the digest of
/// the joined text keys mock fixtures and run artifacts.
struct Prompt {
  std::array<std::string, 4> parts;
  std::string rendered;
  std::string hash;
  int token_estimate = 0;
};

/// Rough byte-based estimate; only used to reject prompts that cannot fit.
inline int estimate_tokens(const std::string& text) {
  return static_cast<int>((text.size() + 3) / 4);
}

inline std::string prompt_asset_dir(EnvId env, Method method) {
  return "prompts/" + to_string(env) + "/" + to_string(method) + "/";
}

inline Prompt assemble_prompt(std::array<std::string, 4> parts, int context_budget_tokens) {
  Prompt p;
  p.parts = std::move(parts);
  p.rendered = p.parts[0] + "\n\n" + p.parts[1] + "\n\n" + p.parts[2] + "\n\n" + p.parts[3];
  p.hash = hex64(fnv1a64(p.rendered));
  p.token_estimate = estimate_tokens(p.rendered);
  if (context_budget_tokens > 0 && p.token_estimate > context_budget_tokens) {
    throw std::runtime_error("prompt exceeds context budget: " +
                             std::to_string(p.token_estimate) + " > " +
                             std::to_string(context_budget_tokens) + " tokens");
  }
  return p;
}

/// Builds the full explanation prompt for one query state.
inline Prompt build_prompt(const AssetStore& assets, EnvId env, Method method, Role role,
                           const RenderedBR& br, const std::string& action_text,
                           int context_budget_tokens = 16000) {
  if (br.method != method) {
    throw std::runtime_error("representation was rendered for a different method");
  }
  std::string dir = prompt_asset_dir(env, method);
  std::string env_part = assets.text(dir + "env_description.txt");
  std::string br_part = assets.text(dir + "br_description.txt");
  std::string icl_part = assets.text(dir + "icl_examples.txt");
  std::string role_word = to_string(role);
  replace_all(env_part, "{role}", role_word);
  replace_all(br_part, "{role}", role_word);
  replace_all(icl_part, "{role}", role_word);

  std::string query;
  if (method == Method::Path) {
    query = "Features:\n" + br.text;
  } else {
    query = br.text;
  }
  query += "\n\n" + action_header(env, role) + "\n\n" + action_text;

  return assemble_prompt({std::move(env_part), std::move(br_part), std::move(icl_part),
                          std::move(query)},
                         context_budget_tokens);
}

}  // namespace xplain
