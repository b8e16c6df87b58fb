#pragma once

#include "xplain/core/assets.hpp"
#include "xplain/core/types.hpp"

namespace xplain {

enum class Criterion { Correctness, Informativeness, Strategy, Category, Goal };

inline std::string to_string(Criterion c) {
  switch (c) {
    case Criterion::Correctness: return "correctness";
    case Criterion::Informativeness: return "informativeness";
    case Criterion::Strategy: return "strategy";
    case Criterion::Category: return "category";
    case Criterion::Goal: return "goal";
  }
  throw std::logic_error("bad Criterion");
}

inline Criterion criterion_from_string(const std::string& s) {
  if (s == "correctness") return Criterion::Correctness;
  if (s == "informativeness") return Criterion::Informativeness;
  if (s == "strategy") return Criterion::Strategy;
  if (s == "category") return Criterion::Category;
  if (s == "goal") return Criterion::Goal;
  throw std::runtime_error("unknown criterion: " + s);
}

/// Strategy and category only make sense for the two-behavior USAR setting.
inline std::vector<Criterion> criteria_for(EnvId env) {
  if (env == EnvId::Usar) {
    return {Criterion::Correctness, Criterion::Informativeness, Criterion::Strategy,
            Criterion::Category, Criterion::Goal};
  }
  return {Criterion::Correctness, Criterion::Informativeness, Criterion::Goal};
}

/// Loads the verbatim criterion definition shown to the judge.
inline std::string criterion_text(const AssetStore& assets, EnvId env, Criterion c) {
  switch (c) {
    case Criterion::Correctness: return assets.text("criteria/correctness.txt");
    case Criterion::Informativeness: return assets.text("criteria/informativeness.txt");
    case Criterion::Strategy:
      if (env != EnvId::Usar) throw std::runtime_error("strategy criterion is USAR-only");
      return assets.text("criteria/usar_strategy.txt");
    case Criterion::Category:
      if (env != EnvId::Usar) throw std::runtime_error("category criterion is USAR-only");
      return assets.text("criteria/usar_category.txt");
    case Criterion::Goal: return assets.text("criteria/" + to_string(env) + "_goal.txt");
  }
  throw std::logic_error("bad Criterion");
}

}  // namespace xplain
