#pragma once

#include "xplain/core/types.hpp"
#include "xplain/llm/chat.hpp"

namespace xplain::testing {

/// Deterministic stand-in for the explainer model: a pure function of the
/// conversation, so recorded fixtures replay byte-identically. One-turn
/// conversations get an explanation built around the query's action line;
/// three-turn conversations are the follow-up and get a bare action word.
class ScriptedExplainer : public ChatClient {
 public:
  explicit ScriptedExplainer(EnvId env) : env_(env) {}

  ChatResult complete(const std::vector<ChatMessage>& messages) override {
    uint64_t h = fnv1a64(conversation_hash(messages));
    if (messages.size() >= 3) return {predict(h), 0.0};
    return {explain(messages.front().content, h), 0.0};
  }

 private:
  static std::string last_line(const std::string& text) {
    size_t end = text.find_last_not_of('\n');
    if (end == std::string::npos) return text;
    size_t start = text.rfind('\n', end);
    return text.substr(start == std::string::npos ? 0 : start + 1,
                       end - (start == std::string::npos ? 0 : start + 1) + 1);
  }

  std::string explain(const std::string& prompt, uint64_t h) const {
    std::string action = last_line(prompt);
    const char* flavor = "";
    switch (env_) {
      case EnvId::Usar: {
        static const char* usar[4] = {
            "searching for unexplored rooms to expand the shared map",
            "moving toward rubble it has already located so it can be removed",
            "prioritizing the rescue of a victim it has already found",
            "following a fixed patrol pattern through the grid"};
        flavor = usar[h % 4];
        break;
      }
      case EnvId::Pacman: {
        static const char* pacman[3] = {"collecting the nearest food pellet",
                                        "avoiding a ghost that has come too close",
                                        "chasing a frightened ghost to eat it"};
        flavor = pacman[h % 3];
        break;
      }
      case EnvId::Babyai: {
        static const char* babyai[2] = {
            "navigating toward the red ball",
            "turning to line up with the red ball before moving forward"};
        flavor = babyai[h % 2];
        break;
      }
    }
    return "The action \"" + action + "\" suggests the agent is " + flavor + ".";
  }

  std::string predict(uint64_t h) const {
    switch (env_) {
      case EnvId::Usar: {
        static const char* acts[5] = {"north", "south", "east", "west", "interact"};
        return acts[h % 5];
      }
      case EnvId::Pacman: {
        static const char* acts[4] = {"north", "south", "east", "west"};
        return acts[h % 4];
      }
      case EnvId::Babyai: {
        static const char* acts[3] = {"turn left", "turn right", "move forward"};
        return acts[h % 3];
      }
    }
    throw std::logic_error("bad EnvId");
  }

  EnvId env_;
};

/// Deterministic stand-in for the judge. Ranking requests get a permutation
/// keyed by the prompt hash; one in seven first replies is deliberately
/// unparseable so the repair turn stays exercised, and the repair turn always
/// succeeds. Yes/no grading questions alternate by hash.
class ScriptedJudge : public ChatClient {
 public:
  ChatResult complete(const std::vector<ChatMessage>& messages) override {
    uint64_t h = fnv1a64(conversation_hash(messages));
    if (messages.size() >= 3) return {permutation(h), 0.0};
    const std::string& prompt = messages.front().content;
    if (prompt.find("Answer with only yes or no") != std::string::npos) {
      return {h % 2 == 0 ? "Yes" : "No", 0.0};
    }
    if (h % 7 == 0) return {"As a judge I decline to order these.", 0.0};
    return {permutation(h), 0.0};
  }

 private:
  static std::string permutation(uint64_t h) {
    static const char* perms[6] = {"1,2,3", "1,3,2", "2,1,3", "2,3,1", "3,1,2", "3,2,1"};
    return perms[h % 6];
  }
};

/// Judge that always prefers whatever was shown first. Under uniformly
/// shuffled presentation order every method should win about one third of
/// the time, which pins down the order-randomization logic.
class FirstShownJudge : public ChatClient {
 public:
  ChatResult complete(const std::vector<ChatMessage>&) override { return {"1,2,3", 0.0}; }
};

}  // namespace xplain::testing
