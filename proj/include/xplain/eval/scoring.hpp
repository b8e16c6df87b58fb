#pragma once

#include "xplain/llm/explain.hpp"
#include "xplain/policy/ground_truth.hpp"

namespace xplain {

enum class ScoringMode { KeywordAuto, JudgeAuto, HumanImport };

inline std::string to_string(ScoringMode m) {
  switch (m) {
    case ScoringMode::KeywordAuto: return "keyword_auto";
    case ScoringMode::JudgeAuto: return "judge_auto";
    case ScoringMode::HumanImport: return "human_import";
  }
  throw std::logic_error("bad ScoringMode");
}

inline ScoringMode scoring_mode_from_string(const std::string& s) {
  if (s == "keyword_auto") return ScoringMode::KeywordAuto;
  if (s == "judge_auto") return ScoringMode::JudgeAuto;
  if (s == "human_import") return ScoringMode::HumanImport;
  throw std::runtime_error("unknown scoring mode: " + s);
}

struct ScoreCard {
  std::string sample_ref;
  Method method = Method::NoBR;
  bool strategy_correct = false;
  bool category_correct = false;
  bool goal_correct = false;
  bool action_correct = false;
  bool intent_correct = false;
  bool prediction_parsed = false;
  Horizon horizon = Horizon::LongTerm;
  std::string annotator = "auto";

  json to_json() const {
    json j;
    j["sample"] = sample_ref;
    j["method"] = xplain::to_string(method);
    j["strategy_correct"] = strategy_correct;
    j["category_correct"] = category_correct;
    j["goal_correct"] = goal_correct;
    j["action_correct"] = action_correct;
    j["intent_correct"] = intent_correct;
    j["prediction_parsed"] = prediction_parsed;
    j["horizon"] = xplain::to_string(horizon);
    j["annotator"] = annotator;
    return j;
  }

  static ScoreCard from_json(const json& j) {
    ScoreCard c;
    c.sample_ref = j.at("sample").get<std::string>();
    c.method = method_from_string(j.at("method").get<std::string>());
    c.strategy_correct = j.at("strategy_correct").get<bool>();
    c.category_correct = j.at("category_correct").get<bool>();
    c.goal_correct = j.at("goal_correct").get<bool>();
    c.action_correct = j.at("action_correct").get<bool>();
    c.intent_correct = j.at("intent_correct").get<bool>();
    c.prediction_parsed = j.value("prediction_parsed", true);
    c.horizon = horizon_from_string(j.at("horizon").get<std::string>());
    c.annotator = j.at("annotator").get<std::string>();
    return c;
  }
};

namespace detail {

inline bool contains_any_ci(const std::string& text, const std::vector<std::string>& needles) {
  for (const std::string& n : needles) {
    if (contains_ci(text, n)) return true;
  }
  return false;
}

/// Coordinate mention tolerant of spacing: "(0, 4)" and "(0,4)" both count.
inline bool mentions_coord(const std::string& text, Pos p) {
  std::string squeezed;
  squeezed.reserve(text.size());
  for (char c : text) {
    if (c != ' ') squeezed += c;
  }
  std::string needle = "(" + std::to_string(p.x) + "," + std::to_string(p.y) + ")";
  return squeezed.find(needle) != std::string::npos;
}

inline bool matches_strategy(const std::string& text, Behavior strategy) {
  switch (strategy) {
    case Behavior::Search:
      return contains_any_ci(text, {"search", "explor"});
    case Behavior::Rescue:
      return contains_any_ci(text, {"rescu", "removal of rubble", "removing rubble",
                                    "remove rubble", "remove the rubble", "clearing rubble",
                                    "clear rubble", "clear the rubble"});
    case Behavior::Fixed:
      return contains_any_ci(text, {"fixed", "patrol", "pattern", "predetermined", "preset"});
    case Behavior::PacmanHeuristic:
    case Behavior::BabyaiGoto:
      return true;  // single-behavior environments have no strategy distinction
  }
  throw std::logic_error("bad Behavior");
}

inline bool matches_category(const std::string& text, GoalCategory category) {
  switch (category) {
    case GoalCategory::UnexploredRoom:
      return contains_any_ci(text, {"unexplored", "explore", "exploring", "exploration"});
    case GoalCategory::Rubble:
      return contains_ci(text, "rubble");
    case GoalCategory::Victim:
      return contains_ci(text, "victim");
    case GoalCategory::FixedPath:
      return contains_any_ci(text, {"fixed", "patrol", "pattern", "predetermined", "preset"});
    case GoalCategory::Pellet:
      return contains_any_ci(text, {"pellet", "food"});
    case GoalCategory::PowerPellet:
      return contains_any_ci(text, {"power pellet", "power-pellet", "super pellet", "capsule"});
    case GoalCategory::FrightenedGhost:
      return contains_any_ci(text, {"frightened", "scared", "eat the ghost", "eating the ghost",
                                    "chase", "chasing"});
    case GoalCategory::AvoidGhost:
      return contains_any_ci(text, {"avoid", "flee", "escape", "evade", "away from", "run from",
                                    "danger"});
    case GoalCategory::RedBall:
      return contains_ci(text, "red ball");
  }
  throw std::logic_error("bad GoalCategory");
}

/// Goal identification. USAR: the goal room's coordinates. BabyAI: the red
/// ball plus its relative offset phrases. Pacman features carry directions,
/// not coordinates, so goal collapses onto the category there.
inline bool matches_goal(const std::string& text, const IntentRecord& intent, EnvId env,
                         Pos goal_offset) {
  switch (env) {
    case EnvId::Usar:
      return intent.goal.has_value() && mentions_coord(text, *intent.goal);
    case EnvId::Pacman:
      return matches_category(text, intent.category);
    case EnvId::Babyai: {
      if (!contains_ci(text, "red ball")) return false;
      if (goal_offset.y != 0) {
        std::string part = grid_cells(std::abs(goal_offset.y)) +
                           (goal_offset.y > 0 ? " in front" : " behind");
        if (!contains_ci(text, part)) return false;
      }
      if (goal_offset.x != 0) {
        std::string part =
            grid_cells(std::abs(goal_offset.x)) + (goal_offset.x > 0 ? " left" : " right");
        if (!contains_ci(text, part)) return false;
      }
      return true;
    }
  }
  throw std::logic_error("bad EnvId");
}

}  // namespace detail

/// Keyword-lexicon scoring of one explanation against the expert's intent.
/// This is an automatic approximation of the paper's by-hand scoring and is
/// labeled as such in reports. goal_offset only matters for BabyAI (the red
/// ball's rotated-frame offset at the query state).
inline ScoreCard score_explanation(const std::string& explanation, const IntentRecord& intent,
                                   EnvId env, Pos goal_offset = {0, 0}) {
  ScoreCard card;
  card.horizon = intent.horizon;
  card.annotator = "auto";
  if (explanation.empty()) return card;
  card.strategy_correct = detail::matches_strategy(explanation, intent.strategy);
  card.category_correct = detail::matches_category(explanation, intent.category);
  card.goal_correct = detail::matches_goal(explanation, intent, env, goal_offset);
  return card;
}

/// Grades a follow-up prediction: exact action match, plus whether the reply
/// states the right intent for the NEXT step (category and, where present,
/// goal location).
inline void score_action_prediction(ScoreCard& card, const PredictionRecord& prediction,
                                    int actual_next_action, const IntentRecord& next_intent,
                                    EnvId env, Pos next_goal_offset = {0, 0}) {
  card.prediction_parsed = prediction.parsed;
  if (!prediction.parsed) {
    card.action_correct = false;
    card.intent_correct = false;
    return;
  }
  card.action_correct = prediction.predicted_action == actual_next_action;
  bool category_ok = detail::matches_category(prediction.reply, next_intent.category);
  bool goal_ok = true;
  if (env == EnvId::Usar && next_intent.goal) {
    goal_ok = detail::mentions_coord(prediction.reply, *next_intent.goal);
  } else if (env == EnvId::Babyai) {
    goal_ok = detail::matches_goal(prediction.reply, next_intent, env, next_goal_offset);
  }
  card.intent_correct = category_ok && goal_ok;
}

/// Asks the judge model a yes/no question per criterion instead of keyword
/// matching. Unparseable answers count as "no".
inline ScoreCard score_explanation_judge(ChatClient& judge, const AssetStore& assets,
                                         const std::string& explanation,
                                         const std::string& ground_truth,
                                         const IntentRecord& intent) {
  ScoreCard card;
  card.horizon = intent.horizon;
  card.annotator = "auto";
  auto ask = [&](const std::string& aspect) {
    std::string prompt = assets.text("judge/score_prompt.txt");
    replace_all(prompt, "{aspect}", aspect);
    replace_all(prompt, "{ground_truth}", ground_truth);
    replace_all(prompt, "{explanation}", explanation);
    ChatResult res = judge.complete({{"user", prompt}});
    std::string reply = lower(res.text);
    size_t yes = reply.find("yes");
    size_t no = reply.find("no");
    return yes != std::string::npos && (no == std::string::npos || yes < no);
  };
  card.strategy_correct = ask("behavior pattern (strategy)");
  card.category_correct = ask("goal category");
  card.goal_correct = ask("specific goal location");
  return card;
}

}  // namespace xplain
