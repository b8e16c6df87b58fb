#pragma once

#include <algorithm>
#include <ctime>
#include <iostream>
#include <map>
#include <memory>
#include <tuple>

#include "xplain/br/render.hpp"
#include "xplain/cli/config.hpp"
#include "xplain/eval/report.hpp"
#include "xplain/llm/explain.hpp"

namespace xplain {

namespace detail {

inline std::string now_utc_iso8601() {
  std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

/// Mock runs pin the clock so artifacts are byte-stable.
inline std::string run_timestamp(const ModelConfig& m) {
  return m.mode == "mock" ? "1970-01-01T00:00:00Z" : now_utc_iso8601();
}

inline std::string model_label(const ModelConfig& m) {
  return m.mode == "mock" ? "mock" : m.model;
}

inline std::string pair_key(Behavior b, Role r) { return to_string(b) + "." + to_string(r); }

inline std::string tree_path(const std::string& out_dir, Behavior b, Role r) {
  return out_dir + "/trees/" + pair_key(b, r) + ".tree.json";
}

inline Pos babyai_goal_offset(const EnvState& s) {
  const auto& st = std::get<babyai::State>(s);
  return babyai::relative_offset(st, st.objects[static_cast<size_t>(st.goal_index)].pos);
}

inline bool selector_matches(const std::string& selector, Horizon h) {
  if (selector == "random") return true;
  return to_string(h) == selector;
}

inline json load_json_file(const std::string& path, const std::string& what) {
  if (!std::filesystem::exists(path)) {
    throw XplainError("artifact", "missing " + what + ": " + path);
  }
  return json::parse(read_file(path));
}

}  // namespace detail

/// Distills one tree per (behavior, role), writes trees plus the feature
/// manifest, and records on-policy fidelity. Fails (after writing everything)
/// if any pair lands below the configured floor.
inline int cmd_distill(const ExperimentConfig& cfg, const AssetStore& assets) {
  (void)assets;
  namespace fs = std::filesystem;
  fs::create_directories(cfg.out_dir + "/trees");

  const FeatureManifest& manifest = manifest_for(cfg.env);
  write_file(cfg.out_dir + "/" + manifest.id + ".json", manifest.to_json().dump(2) + "\n");
  write_file(cfg.out_dir + "/config.json", cfg.to_json().dump(2) + "\n");

  std::vector<json> fidelity_rows;
  json detail_report = json::object();
  std::vector<std::string> below_floor;

  for (Behavior b : cfg.behaviors) {
    for (Role r : cfg.roles) {
      DaggerParams params = cfg.distill;
      params.seed = derive_seed(cfg.seed, fnv1a64("distill." + detail::pair_key(b, r)));
      DistillResult res = dagger_distill(cfg.env, r, b, params);
      const IterationStat& last = res.report.iterations.back();

      json tree_j = res.tree.to_json();
      tree_j["env"] = to_string(cfg.env);
      tree_j["behavior"] = to_string(b);
      tree_j["role"] = to_string(r);
      write_file(detail::tree_path(cfg.out_dir, b, r), tree_j.dump() + "\n");

      json row;
      row["behavior"] = to_string(b);
      row["role"] = to_string(r);
      row["episodes"] = params.eval_episodes;
      row["accuracy"] = round_to(last.fidelity, 6);
      fidelity_rows.push_back(row);

      json iters = json::array();
      for (const IterationStat& st : res.report.iterations) {
        iters.push_back({{"iteration", st.iteration},
                         {"dataset_rows", st.dataset_rows},
                         {"train_accuracy", round_to(st.train_accuracy, 6)},
                         {"fidelity", round_to(st.fidelity, 6)}});
      }
      detail_report[detail::pair_key(b, r)] = {{"iterations", iters}};

      std::cout << "distill " << detail::pair_key(b, r) << ": fidelity "
                << format_fixed(last.fidelity, 4) << " over " << params.eval_episodes
                << " episodes (" << last.dataset_rows << " rows)\n";
      if (last.fidelity < cfg.fidelity_floor) below_floor.push_back(detail::pair_key(b, r));
    }
  }

  write_file(cfg.out_dir + "/fidelity.json", json(fidelity_rows).dump(2) + "\n");
  write_file(cfg.out_dir + "/distill_report.json", detail_report.dump(2) + "\n");

  if (!below_floor.empty()) {
    std::string names;
    for (const std::string& n : below_floor) names += (names.empty() ? "" : ", ") + n;
    throw XplainError("fidelity", "fidelity below floor " +
                                      format_fixed(cfg.fidelity_floor, 4) + " for: " + names);
  }
  return 0;
}

namespace detail {

struct SampleRow {
  std::string ref;
  Behavior behavior = Behavior::Search;
  Role role = Role::Solo;
  int episode = 0;
  int t = 0;
  EnvState state;
  int action = 0;
  std::string action_text;
  IntentRecord intent;
  std::string gt;
  int next_action = 0;
  IntentRecord next_intent;
  std::vector<SupportPair> support;
  Pos goal_offset{0, 0};
  Pos next_goal_offset{0, 0};
};

inline json sample_to_json(EnvId env, const SampleRow& s) {
  json j;
  j["ref"] = s.ref;
  j["env"] = to_string(env);
  j["behavior"] = to_string(s.behavior);
  j["role"] = to_string(s.role);
  j["episode"] = s.episode;
  j["t"] = s.t;
  j["state"] = state_to_json(s.state);
  j["action"] = s.action;
  j["action_name"] = action_name(env, s.role, s.action);
  j["action_text"] = s.action_text;
  j["intent"] = intent_to_json(s.intent);
  j["gt"] = s.gt;
  j["next_action"] = s.next_action;
  j["next_action_name"] = action_name(env, s.role, s.next_action);
  j["next_intent"] = intent_to_json(s.next_intent);
  json sup = json::array();
  for (const SupportPair& p : s.support) {
    sup.push_back({{"state", state_to_json(p.state)}, {"action_text", p.action_text}});
  }
  j["support"] = sup;
  j["goal_offset"] = {s.goal_offset.x, s.goal_offset.y};
  j["next_goal_offset"] = {s.next_goal_offset.x, s.next_goal_offset.y};
  return j;
}

inline SampleRow sample_from_json(EnvId env, const json& j) {
  SampleRow s;
  s.ref = j.at("ref").get<std::string>();
  s.behavior = behavior_from_string(j.at("behavior").get<std::string>());
  s.role = role_from_string(j.at("role").get<std::string>());
  s.episode = j.at("episode").get<int>();
  s.t = j.at("t").get<int>();
  s.state = state_from_json(env, j.at("state"));
  s.action = j.at("action").get<int>();
  s.action_text = j.at("action_text").get<std::string>();
  s.intent = intent_from_json(j.at("intent"));
  s.gt = j.at("gt").get<std::string>();
  s.next_action = j.at("next_action").get<int>();
  s.next_intent = intent_from_json(j.at("next_intent"));
  for (const json& p : j.at("support")) {
    s.support.push_back({state_from_json(env, p.at("state")),
                         p.at("action_text").get<std::string>()});
  }
  s.goal_offset = {j.at("goal_offset").at(0).get<int>(), j.at("goal_offset").at(1).get<int>()};
  s.next_goal_offset = {j.at("next_goal_offset").at(0).get<int>(),
                        j.at("next_goal_offset").at(1).get<int>()};
  return s;
}

}  // namespace detail

/// Samples query states from expert rollouts (gated on tree agreement),
/// renders every configured representation, and queries the explainer model.
/// Emits samples.jsonl plus explanations.jsonl; the latter carries the full
/// rendered prompt so evaluation can run entirely offline.
inline int cmd_explain(const ExperimentConfig& cfg, const AssetStore& assets,
                       ChatClient* client_override = nullptr) {
  PhraseTable phrases = PhraseTable::load(assets, cfg.env);
  std::unique_ptr<ChatClient> owned;
  if (client_override == nullptr) owned = make_client(cfg.explainer);
  ChatClient& client = client_override != nullptr ? *client_override : *owned;
  int max_steps = cfg.distill.max_steps > 0 ? cfg.distill.max_steps
                                            : default_max_steps(cfg.env);

  std::vector<json> sample_rows;
  std::vector<json> explanation_rows;
  json meta;
  meta["scanned"] = 0;
  meta["gate_failed"] = 0;
  meta["selector_rejected"] = 0;
  meta["terminal_rejected"] = 0;
  meta["selected"] = 0;
  json per_group = json::object();

  for (Behavior b : cfg.behaviors) {
    for (Role r : cfg.roles) {
      json tree_j = detail::load_json_file(detail::tree_path(cfg.out_dir, b, r),
                                           "tree (run distill first)");
      DecisionTree tree = DecisionTree::from_json(tree_j);

      uint64_t base = derive_seed(cfg.seed, fnv1a64("sample." + detail::pair_key(b, r)));
      std::vector<detail::SampleRow> candidates;
      int scanned = 0, gate_failed = 0, selector_rejected = 0, terminal_rejected = 0;

      for (int ep = 0; ep < cfg.samples.episodes; ++ep) {
        EnvState s = reset_env(cfg.env, derive_seed(base, static_cast<uint64_t>(ep)));
        std::vector<SupportPair> history;
        for (int t = 0; t < max_steps && !env_terminal(s); ++t) {
          PolicyResult pr = policy_act(s, r, b);
          pr.intent.horizon = classify_state(s, r, b);
          std::string atext = action_text(s, r, pr.action);

          ++scanned;
          FeatureVector fv = encode_state(s);
          bool gate = tree.predict(fv.values) == pr.action;

          EnvState next = s;
          env_advance(next, r, pr.action, b);

          if (!gate) {
            ++gate_failed;
          } else if (!detail::selector_matches(cfg.samples.selector, pr.intent.horizon)) {
            ++selector_rejected;
          } else if (env_terminal(next)) {
            ++terminal_rejected;
          } else {
            PolicyResult npr = policy_act(next, r, b);
            npr.intent.horizon = classify_state(next, r, b);

            detail::SampleRow row;
            row.ref = to_string(cfg.env) + "." + detail::pair_key(b, r) + ".ep" +
                      std::to_string(ep) + ".t" + std::to_string(t);
            row.behavior = b;
            row.role = r;
            row.episode = ep;
            row.t = t;
            row.state = s;
            row.action = pr.action;
            row.action_text = atext;
            row.intent = pr.intent;
            row.gt = ground_truth_text(assets, s, r, pr.action, pr.intent);
            row.next_action = npr.action;
            row.next_intent = npr.intent;
            size_t k = static_cast<size_t>(cfg.samples.support_pairs);
            size_t start = history.size() > k ? history.size() - k : 0;
            row.support.assign(history.begin() + static_cast<long>(start), history.end());
            if (row.support.empty()) row.support.push_back({s, atext});
            if (cfg.env == EnvId::Babyai) {
              row.goal_offset = detail::babyai_goal_offset(s);
              row.next_goal_offset = detail::babyai_goal_offset(next);
            }
            candidates.push_back(std::move(row));
          }

          history.push_back({s, atext});
          s = std::move(next);
        }
      }

      Rng picker(derive_seed(base, 0x5e1ec7ull));
      picker.shuffle(candidates);
      size_t take = std::min(static_cast<size_t>(cfg.samples.count), candidates.size());
      std::vector<detail::SampleRow> chosen(candidates.begin(),
                                            candidates.begin() + static_cast<long>(take));
      std::sort(chosen.begin(), chosen.end(),
                [](const detail::SampleRow& a, const detail::SampleRow& x) {
                  return std::tie(a.episode, a.t) < std::tie(x.episode, x.t);
                });

      for (const detail::SampleRow& row : chosen) {
        sample_rows.push_back(detail::sample_to_json(cfg.env, row));
        for (Method m : cfg.methods) {
          RenderedBR br;
          if (m == Method::Path) {
            FeatureVector fv = encode_state(row.state);
            br = render_path(extract_path(tree, fv.values), phrases);
          } else if (m == Method::State) {
            br = render_state(row.state, Method::State, row.support, row.role);
          } else {
            br = render_state(row.state, Method::NoBR, {}, row.role);
          }
          Prompt prompt = build_prompt(assets, cfg.env, m, row.role, br, row.action_text,
                                       cfg.context_budget_tokens);
          ExplanationRecord rec = explain_sample(client, row.ref, m, prompt);

          json e;
          e["sample"] = rec.sample_ref;
          e["method"] = to_string(m);
          e["model"] = detail::model_label(cfg.explainer);
          e["prompt_hash"] = rec.prompt_hash;
          e["prompt_tokens"] = rec.prompt_tokens;
          e["prompt"] = prompt.rendered;
          e["explanation"] = rec.explanation;
          e["latency_ms"] = rec.latency_ms;
          e["timestamp"] = detail::run_timestamp(cfg.explainer);
          explanation_rows.push_back(std::move(e));
        }
      }

      json g;
      g["scanned"] = scanned;
      g["gate_failed"] = gate_failed;
      g["selector_rejected"] = selector_rejected;
      g["terminal_rejected"] = terminal_rejected;
      g["selected"] = static_cast<int>(chosen.size());
      per_group[detail::pair_key(b, r)] = g;
      meta["scanned"] = meta["scanned"].get<int>() + scanned;
      meta["gate_failed"] = meta["gate_failed"].get<int>() + gate_failed;
      meta["selector_rejected"] = meta["selector_rejected"].get<int>() + selector_rejected;
      meta["terminal_rejected"] = meta["terminal_rejected"].get<int>() + terminal_rejected;
      meta["selected"] = meta["selected"].get<int>() + static_cast<int>(chosen.size());

      std::cout << "explain " << detail::pair_key(b, r) << ": " << chosen.size()
                << " samples, " << chosen.size() * cfg.methods.size() << " explanations\n";
      if (chosen.size() < static_cast<size_t>(cfg.samples.count)) {
        std::cout << "  note: only " << chosen.size() << " of " << cfg.samples.count
                  << " requested candidates matched selector \"" << cfg.samples.selector
                  << "\"\n";
      }
    }
  }

  meta["per_group"] = per_group;
  write_jsonl(cfg.out_dir + "/samples.jsonl", sample_rows);
  write_jsonl(cfg.out_dir + "/explanations.jsonl", explanation_rows);
  write_file(cfg.out_dir + "/explain_meta.json", meta.dump(2) + "\n");
  return 0;
}

namespace detail {

/// Rebuilds the report from on-disk artifacts. Both `evaluate` and `report`
/// end here, so a regenerated report is byte-identical to the original.
inline int report_from_artifacts(const ExperimentConfig& cfg) {
  for (const char* name : {"samples.jsonl", "rankings.jsonl", "scorecards.jsonl"}) {
    if (!std::filesystem::exists(cfg.out_dir + "/" + name)) {
      throw XplainError("artifact", "missing " + cfg.out_dir + "/" + name +
                                        "; run explain and evaluate first");
    }
  }
  std::vector<json> sample_rows = read_jsonl(cfg.out_dir + "/samples.jsonl");

  ReportInputs in;
  in.criteria = cfg.criteria;
  in.scoring_label = to_string(cfg.scoring);

  for (const json& s : sample_rows) {
    std::string g = group_of(s.at("ref").get<std::string>());
    if (std::find(in.groups.begin(), in.groups.end(), g) == in.groups.end()) {
      in.groups.push_back(g);
    }
  }

  std::string fid_path = cfg.out_dir + "/fidelity.json";
  if (std::filesystem::exists(fid_path)) {
    for (const json& row : json::parse(read_file(fid_path))) in.fidelity_rows.push_back(row);
  }
  std::string meta_path = cfg.out_dir + "/explain_meta.json";
  if (std::filesystem::exists(meta_path)) {
    in.gating_skipped = json::parse(read_file(meta_path)).value("gate_failed", 0);
  }
  for (const json& j : read_jsonl(cfg.out_dir + "/rankings.jsonl")) {
    in.rankings.push_back(RankingRecord::from_json(j));
  }
  for (const json& j : read_jsonl(cfg.out_dir + "/scorecards.jsonl")) {
    in.cards.push_back(ScoreCard::from_json(j));
  }
  if (!cfg.annotations_path.empty()) {
    in.annotations = count_annotations(load_annotations(cfg.annotations_path));
  }

  json summary;
  summary["environment"] = to_string(cfg.env);
  summary["seed"] = cfg.seed;
  summary["explainer"] = model_label(cfg.explainer);
  summary["judge"] = model_label(cfg.judge);
  std::string methods;
  for (Method m : cfg.methods) methods += (methods.empty() ? "" : ", ") + to_string(m);
  summary["methods"] = methods;
  summary["selector"] = cfg.samples.selector;
  in.config_summary = summary;

  Report rep = build_report(in);
  write_file(cfg.out_dir + "/report.md", rep.markdown);
  write_file(cfg.out_dir + "/report.json", rep.data.dump(2) + "\n");
  std::cout << "report: " << cfg.out_dir << "/report.md (" << in.rankings.size()
            << " rankings, " << in.cards.size() << " scorecards)\n";
  return 0;
}

}  // namespace detail

/// Judge ranking per criterion, follow-up action prediction, and explanation
/// scoring. Consumes samples.jsonl + explanations.jsonl; needs no explainer
/// re-run because prompts were persisted.
inline int cmd_evaluate(const ExperimentConfig& cfg, const AssetStore& assets,
                        ChatClient* judge_override = nullptr,
                        ChatClient* explainer_override = nullptr) {
  std::vector<json> sample_rows = read_jsonl(cfg.out_dir + "/samples.jsonl");
  if (sample_rows.empty()) {
    throw XplainError("artifact", "no samples in " + cfg.out_dir + "; run explain first");
  }

  std::map<std::pair<std::string, Method>, json> explanations;
  for (json& e : read_jsonl(cfg.out_dir + "/explanations.jsonl")) {
    // Key fields must be pulled out before the move empties the row.
    std::pair<std::string, Method> key{e.at("sample").get<std::string>(),
                                       method_from_string(e.at("method").get<std::string>())};
    explanations[key] = std::move(e);
  }

  std::unique_ptr<ChatClient> owned_judge;
  if (judge_override == nullptr) owned_judge = make_client(cfg.judge);
  ChatClient& judge = judge_override != nullptr ? *judge_override : *owned_judge;
  std::unique_ptr<ChatClient> owned_explainer;
  ChatClient* explainer = explainer_override;
  if (explainer == nullptr && cfg.scoring != ScoringMode::HumanImport) {
    owned_explainer = make_client(cfg.explainer);
    explainer = owned_explainer.get();
  }

  std::map<std::pair<std::string, Method>, json> human_scores;
  if (cfg.scoring == ScoringMode::HumanImport) {
    for (json& h : read_jsonl(cfg.human_scores_path)) {
      std::pair<std::string, Method> key{h.at("sample").get<std::string>(),
                                         method_from_string(h.at("method").get<std::string>())};
      human_scores[key] = std::move(h);
    }
  }

  bool can_rank = cfg.methods.size() == 3;
  std::vector<json> ranking_rows, card_rows, prediction_rows;
  int rank_count = 0;

  for (const json& sj : sample_rows) {
    detail::SampleRow s = detail::sample_from_json(cfg.env, sj);

    auto text_of = [&](Method m) -> const json& {
      auto it = explanations.find({s.ref, m});
      if (it == explanations.end()) {
        throw XplainError("artifact",
                          "missing explanation for " + s.ref + " / " + to_string(m));
      }
      return it->second;
    };

    if (can_rank) {
      std::array<std::string, 3> texts;
      for (Method m : cfg.methods) {
        texts[static_cast<size_t>(m)] = text_of(m).at("explanation").get<std::string>();
      }
      for (Criterion crit : cfg.criteria) {
        uint64_t rank_seed =
            derive_seed(cfg.seed, fnv1a64(s.ref + "#" + to_string(crit)));
        RankingRecord rec =
            rank_triplet(judge, assets, s.ref, crit, criterion_text(assets, cfg.env, crit),
                         s.gt, texts, rank_seed, detail::model_label(cfg.judge));
        ranking_rows.push_back(rec.to_json());
        ++rank_count;
      }
    }

    for (Method m : cfg.methods) {
      const json& e = text_of(m);
      ScoreCard card;

      if (cfg.scoring == ScoringMode::HumanImport) {
        auto it = human_scores.find({s.ref, m});
        if (it == human_scores.end()) {
          throw XplainError("artifact", "human scores are missing " + s.ref + " / " +
                                            to_string(m));
        }
        card = ScoreCard::from_json(it->second);
      } else {
        ExplanationRecord erec;
        erec.sample_ref = s.ref;
        erec.method = m;
        erec.explanation = e.at("explanation").get<std::string>();
        Prompt prompt;
        prompt.rendered = e.at("prompt").get<std::string>();
        PredictionRecord pred = predict_next(*explainer, assets, cfg.env, m, prompt, erec,
                                             s.next_action, s.role);

        if (cfg.scoring == ScoringMode::JudgeAuto) {
          card = score_explanation_judge(judge, assets, erec.explanation, s.gt, s.intent);
          card.horizon = s.intent.horizon;
        } else {
          card = score_explanation(erec.explanation, s.intent, cfg.env, s.goal_offset);
        }
        card.sample_ref = s.ref;
        card.method = m;
        score_action_prediction(card, pred, s.next_action, s.next_intent, cfg.env,
                                s.next_goal_offset);

        json pj;
        pj["sample"] = s.ref;
        pj["method"] = to_string(m);
        pj["reply"] = pred.reply;
        pj["predicted_action"] =
            pred.predicted_action ? json(*pred.predicted_action) : json(nullptr);
        pj["true_action"] = pred.true_action;
        pj["parsed"] = pred.parsed;
        pj["correct"] = pred.correct;
        prediction_rows.push_back(std::move(pj));
      }
      card_rows.push_back(card.to_json());
    }
  }

  write_jsonl(cfg.out_dir + "/rankings.jsonl", ranking_rows);
  write_jsonl(cfg.out_dir + "/scorecards.jsonl", card_rows);
  if (cfg.scoring != ScoringMode::HumanImport) {
    write_jsonl(cfg.out_dir + "/predictions.jsonl", prediction_rows);
  }
  if (!can_rank) {
    std::cout << "evaluate: ranking skipped (needs all three methods; config has "
              << cfg.methods.size() << ")\n";
  }
  std::cout << "evaluate: " << rank_count << " rankings, " << card_rows.size()
            << " scorecards\n";

  return detail::report_from_artifacts(cfg);
}

/// Regenerates report.md / report.json from existing artifacts.
inline int cmd_report(const ExperimentConfig& cfg, const AssetStore& assets) {
  (void)assets;
  return detail::report_from_artifacts(cfg);
}

}  // namespace xplain
