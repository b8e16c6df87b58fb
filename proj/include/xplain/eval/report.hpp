#pragma once

#include <map>
#include <optional>

#include "xplain/eval/annotations.hpp"
#include "xplain/eval/ranking.hpp"
#include "xplain/eval/scoring.hpp"

namespace xplain {

struct ReportInputs {
  json config_summary;              // flat key/value pairs echoed at the top
  std::vector<json> fidelity_rows;  // {"behavior","role","episodes","accuracy"}
  std::vector<RankingRecord> rankings;
  std::vector<ScoreCard> cards;
  std::vector<Criterion> criteria;
  std::vector<std::string> groups;  // ordered "behavior.role" keys
  int gating_skipped = 0;
  std::optional<AnnotationCounts> annotations;
  std::string scoring_label = "keyword_auto";
};

struct Report {
  std::string markdown;
  json data;
};

namespace detail {

/// "usar.search.engineer.ep3.t7" -> "search.engineer".
inline std::string group_of(const std::string& sample_ref) {
  auto parts = split(sample_ref, '.');
  if (parts.size() < 3) throw std::runtime_error("bad sample ref: " + sample_ref);
  return parts[1] + "." + parts[2];
}

inline std::string ratio2(double v) { return format_fixed(v, 2); }

struct AccuracyCell {
  int n = 0;
  int strategy = 0, category = 0, goal = 0, action = 0, intent = 0;

  void add(const ScoreCard& c) {
    ++n;
    strategy += c.strategy_correct;
    category += c.category_correct;
    goal += c.goal_correct;
    action += c.action_correct;
    intent += c.intent_correct;
  }
  json to_json() const {
    json j;
    j["n"] = n;
    if (n > 0) {
      j["strategy"] = round_to(static_cast<double>(strategy) / n, 6);
      j["category"] = round_to(static_cast<double>(category) / n, 6);
      j["goal"] = round_to(static_cast<double>(goal) / n, 6);
      j["action"] = round_to(static_cast<double>(action) / n, 6);
      j["intent"] = round_to(static_cast<double>(intent) / n, 6);
    }
    return j;
  }
  std::string row_cells() const {
    if (n == 0) return "- | - | - | - | -";
    auto f = [&](int k) { return ratio2(static_cast<double>(k) / n); };
    return f(strategy) + " | " + f(category) + " | " + f(goal) + " | " + f(action) + " | " +
           f(intent);
  }
};

}  // namespace detail

/// Aggregates rankings and scorecards into report.md plus report.json. The
/// markdown mirrors the reference layout: per (behavior, role) a top-1 ratio
/// matrix (bold = ranked best with p < 0.05 against both other methods) and
/// an accuracy table bucketed by state horizon.
inline Report build_report(const ReportInputs& in) {
  static const std::array<Method, 3> kMethods = {Method::Path, Method::State, Method::NoBR};
  static const std::array<Horizon, 3> kHorizons = {Horizon::LongTerm, Horizon::ShortTerm,
                                                   Horizon::Ambiguous};
  std::string md;
  json data;
  data["config"] = in.config_summary;

  md += "# Evaluation report\n\n";
  for (auto it = in.config_summary.begin(); it != in.config_summary.end(); ++it) {
    md += "- " + it.key() + ": " +
          (it.value().is_string() ? it.value().get<std::string>() : it.value().dump()) + "\n";
  }
  md += "- scoring: " + in.scoring_label;
  if (in.scoring_label != "human_import") {
    md += " (automatic approximation; the reference scores were produced by hand)";
  }
  md += "\n";

  if (!in.fidelity_rows.empty()) {
    md += "\n## Distillation fidelity\n\n";
    md += "| Behavior | Role | Episodes | Accuracy |\n|---|---|---|---|\n";
    json fj = json::array();
    for (const json& row : in.fidelity_rows) {
      md += "| " + row.at("behavior").get<std::string>() + " | " +
            row.at("role").get<std::string>() + " | " +
            std::to_string(row.at("episodes").get<int>()) + " | " +
            format_fixed(row.at("accuracy").get<double>(), 4) + " |\n";
      fj.push_back(row);
    }
    data["fidelity"] = fj;
  }

  // Bucket records by group, preserving input order inside each bucket.
  std::map<std::string, std::vector<RankingRecord>> rank_by_group;
  for (const RankingRecord& r : in.rankings) {
    rank_by_group[detail::group_of(r.sample_ref)].push_back(r);
  }
  std::map<std::string, std::vector<ScoreCard>> cards_by_group;
  for (const ScoreCard& c : in.cards) {
    cards_by_group[detail::group_of(c.sample_ref)].push_back(c);
  }

  json groups_j;
  for (const std::string& group : in.groups) {
    bool has_ranks = rank_by_group.count(group) > 0;
    bool has_cards = cards_by_group.count(group) > 0;
    if (!has_ranks && !has_cards) continue;
    md += "\n## " + group + "\n";
    json group_j;

    if (has_ranks) {
      const auto& records = rank_by_group[group];
      md += "\n### Top-1 ranking ratios\n\n| Method |";
      for (Criterion c : in.criteria) md += " " + to_string(c) + " |";
      md += "\n|---|";
      for (size_t i = 0; i < in.criteria.size(); ++i) md += "---|";
      md += "\n";

      struct Col {
        Top1Stats stats;
        int best = -1;  // unique argmax of wins, -1 if tied
        bool significant = false;
        std::array<double, 3> p{1.0, 1.0, 1.0};
        bool present = false;
      };
      std::vector<Col> cols(in.criteria.size());
      json rank_j;
      for (size_t ci = 0; ci < in.criteria.size(); ++ci) {
        Criterion crit = in.criteria[ci];
        Col& col = cols[ci];
        int valid = 0;
        for (const RankingRecord& r : records) {
          if (r.criterion == crit && r.valid) ++valid;
        }
        json crit_j;
        if (valid == 0) {
          int excluded = 0;
          for (const RankingRecord& r : records) {
            if (r.criterion == crit) ++excluded;
          }
          crit_j["valid"] = 0;
          crit_j["excluded"] = excluded;
          rank_j[to_string(crit)] = crit_j;
          continue;
        }
        col.present = true;
        col.stats = top1_ratios(records, crit);
        int best = 0;
        bool unique = true;
        for (int m = 1; m < 3; ++m) {
          if (col.stats.wins[static_cast<size_t>(m)] > col.stats.wins[static_cast<size_t>(best)]) {
            best = m;
            unique = true;
          } else if (col.stats.wins[static_cast<size_t>(m)] ==
                     col.stats.wins[static_cast<size_t>(best)]) {
            unique = false;
          }
        }
        if (unique) {
          col.best = best;
          col.significant = col.stats.valid >= 2;
          for (int m = 0; m < 3; ++m) {
            if (m == best) continue;
            TTestResult t = paired_t_test(col.stats.indicators[static_cast<size_t>(best)],
                                          col.stats.indicators[static_cast<size_t>(m)]);
            col.p[static_cast<size_t>(m)] = t.p;
            if (!(t.p < 0.05)) col.significant = false;
          }
        }
        json ratios_j;
        for (Method m : kMethods) {
          ratios_j[to_string(m)] = round_to(col.stats.ratio[static_cast<size_t>(m)], 6);
        }
        crit_j["ratios"] = ratios_j;
        crit_j["valid"] = col.stats.valid;
        crit_j["excluded"] = col.stats.excluded;
        if (col.best >= 0) {
          crit_j["best"] = to_string(static_cast<Method>(col.best));
          json p_j;
          for (int m = 0; m < 3; ++m) {
            if (m == col.best) continue;
            p_j[to_string(static_cast<Method>(m))] = round_to(col.p[static_cast<size_t>(m)], 9);
          }
          crit_j["p_vs_others"] = p_j;
          crit_j["significant"] = col.significant;
        }
        rank_j[to_string(crit)] = crit_j;
      }
      for (Method m : kMethods) {
        md += "| " + to_string(m) + " |";
        for (size_t ci = 0; ci < in.criteria.size(); ++ci) {
          const Col& col = cols[ci];
          if (!col.present) {
            md += " - |";
            continue;
          }
          std::string cell = detail::ratio2(col.stats.ratio[static_cast<size_t>(m)]);
          if (static_cast<int>(m) == col.best && col.significant) cell = "**" + cell + "**";
          md += " " + cell + " |";
        }
        md += "\n";
      }
      md += "\nSamples per criterion:";
      bool first = true;
      for (size_t ci = 0; ci < in.criteria.size(); ++ci) {
        const json& crit_j = rank_j[to_string(in.criteria[ci])];
        md += std::string(first ? " " : "; ") + to_string(in.criteria[ci]) + " " +
              std::to_string(crit_j["valid"].get<int>()) + " valid, " +
              std::to_string(crit_j["excluded"].get<int>()) + " excluded";
        first = false;
      }
      md += ".\n";
      group_j["ranking"] = rank_j;
    }

    if (has_cards) {
      const auto& cards = cards_by_group[group];
      md += "\n### Accuracy by state horizon\n\n";
      md += "| Method | Horizon | Samples | Strategy | Category | Goal | Action | Intent |\n";
      md += "|---|---|---|---|---|---|---|---|\n";
      json acc_j;
      for (Method m : kMethods) {
        detail::AccuracyCell overall;
        std::array<detail::AccuracyCell, 3> by_h;
        for (const ScoreCard& c : cards) {
          if (c.method != m) continue;
          overall.add(c);
          by_h[static_cast<size_t>(c.horizon)].add(c);
        }
        if (overall.n == 0) continue;
        json method_j;
        method_j["overall"] = overall.to_json();
        md += "| " + to_string(m) + " | overall | " + std::to_string(overall.n) + " | " +
              overall.row_cells() + " |\n";
        for (Horizon h : kHorizons) {
          const detail::AccuracyCell& cell = by_h[static_cast<size_t>(h)];
          if (cell.n == 0) continue;
          method_j[to_string(h)] = cell.to_json();
          md += "| " + to_string(m) + " | " + to_string(h) + " | " + std::to_string(cell.n) +
                " | " + cell.row_cells() + " |\n";
        }
        acc_j[to_string(m)] = method_j;
      }
      group_j["accuracy"] = acc_j;
    }
    groups_j[group] = group_j;
  }
  data["groups"] = groups_j;

  if (in.annotations) {
    md += "\n## Imported hallucination annotations\n\n";
    md += "| Method | Annotated explanations | Factual error spans | Illogical reasoning spans "
          "|\n|---|---|---|---|\n";
    json ann_j;
    for (Method m : kMethods) {
      auto mi = static_cast<size_t>(m);
      md += "| " + to_string(m) + " | " + std::to_string(in.annotations->annotated_by_method[mi]) +
            " | " + std::to_string(in.annotations->factual_by_method[mi]) + " | " +
            std::to_string(in.annotations->illogical_by_method[mi]) + " |\n";
      ann_j[to_string(m)] = {{"annotated", in.annotations->annotated_by_method[mi]},
                             {"factual_error", in.annotations->factual_by_method[mi]},
                             {"illogical_reasoning", in.annotations->illogical_by_method[mi]}};
    }
    data["annotations"] = ann_j;
  }

  json notes_j;
  notes_j["gating_skipped"] = in.gating_skipped;
  int parse_failures = 0;
  for (const ScoreCard& c : in.cards) {
    if (!c.prediction_parsed) ++parse_failures;
  }
  notes_j["prediction_parse_failures"] = parse_failures;
  notes_j["scoring"] = in.scoring_label;
  data["notes"] = notes_j;
  md += "\nStates skipped by tree-agreement gating: " + std::to_string(in.gating_skipped) +
        ". Prediction parse failures: " + std::to_string(parse_failures) + ".\n";

  return {md, data};
}

}  // namespace xplain
