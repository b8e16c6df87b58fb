#pragma once

#include <cctype>
#include <optional>

#include "xplain/llm/chat.hpp"
#include "xplain/llm/prompt.hpp"

namespace xplain {

struct ExplanationRecord {
  std::string sample_ref;
  Method method = Method::NoBR;
  std::string prompt_hash;
  std::string explanation;
  double latency_ms = 0.0;
  int prompt_tokens = 0;
};

inline ExplanationRecord explain_sample(ChatClient& client, const std::string& sample_ref,
                                        Method method, const Prompt& prompt) {
  ChatResult res = client.complete({{"user", prompt.rendered}});
  ExplanationRecord rec;
  rec.sample_ref = sample_ref;
  rec.method = method;
  rec.prompt_hash = prompt.hash;
  rec.explanation = res.text;
  rec.latency_ms = res.latency_ms;
  rec.prompt_tokens = prompt.token_estimate;
  return rec;
}

namespace detail {

inline std::vector<std::string> tokenize_lower(const std::string& text) {
  std::vector<std::string> tokens;
  std::string cur;
  for (char c : text) {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      cur += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    } else if (!cur.empty()) {
      tokens.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) tokens.push_back(std::move(cur));
  return tokens;
}

struct ActionPattern {
  std::string prefix;  // matches any token starting with this
  int action;
};

inline const std::vector<ActionPattern>& action_patterns(EnvId env) {
  static const std::vector<ActionPattern> usar = {
      {"north", 0}, {"south", 1}, {"east", 2},   {"west", 3},
      {"interact", 4}, {"rescu", 4}, {"rubble", 4},
  };
  static const std::vector<ActionPattern> pacman = {
      {"north", 0}, {"south", 1}, {"east", 2}, {"west", 3},
      {"up", 0},    {"down", 1},  {"right", 2}, {"left", 3},
  };
  static const std::vector<ActionPattern> babyai = {
      {"left", 0}, {"right", 1}, {"forward", 2},
  };
  switch (env) {
    case EnvId::Usar: return usar;
    case EnvId::Pacman: return pacman;
    case EnvId::Babyai: return babyai;
  }
  throw std::logic_error("bad EnvId");
}

}  // namespace detail

/// Best-effort extraction of a predicted action from free text. The earliest
/// matching keyword wins; ties at one position go to the pattern listed
/// first. Returns nullopt when no keyword appears.
inline std::optional<int> parse_action(EnvId env, const std::string& text) {
  const auto& patterns = detail::action_patterns(env);
  std::vector<std::string> tokens = detail::tokenize_lower(text);
  for (const std::string& tok : tokens) {
    for (const auto& p : patterns) {
      if (tok.rfind(p.prefix, 0) == 0) return p.action;
    }
  }
  return std::nullopt;
}

struct PredictionRecord {
  std::string sample_ref;
  Method method = Method::NoBR;
  std::string reply;
  std::optional<int> predicted_action;
  int true_action = -1;
  bool parsed = false;
  bool correct = false;
  double latency_ms = 0.0;
};

/// Second turn of the conversation: given the explanation the model just
/// produced, ask it to predict the agent's next action and grade the reply.
inline PredictionRecord predict_next(ChatClient& client, const AssetStore& assets, EnvId env,
                                     Method method, const Prompt& prompt,
                                     const ExplanationRecord& explanation, int true_action,
                                     Role role) {
  std::string followup = assets.text(prompt_asset_dir(env, method) + "followup.txt");
  replace_all(followup, "{role}", to_string(role));
  ChatResult res = client.complete({{"user", prompt.rendered},
                                    {"assistant", explanation.explanation},
                                    {"user", followup}});
  PredictionRecord rec;
  rec.sample_ref = explanation.sample_ref;
  rec.method = method;
  rec.reply = res.text;
  rec.predicted_action = parse_action(env, res.text);
  rec.true_action = true_action;
  rec.parsed = rec.predicted_action.has_value();
  rec.correct = rec.parsed && *rec.predicted_action == true_action;
  rec.latency_ms = res.latency_ms;
  return rec;
}

}  // namespace xplain
