#pragma once

#include <array>

#include "xplain/core/rng.hpp"
#include "xplain/eval/criteria.hpp"
#include "xplain/eval/stats.hpp"
#include "xplain/llm/chat.hpp"

namespace xplain {

struct RankingRecord {
  std::string sample_ref;
  Criterion criterion = Criterion::Correctness;
  std::string ground_truth;
  std::vector<Method> shown;    // presentation order, index 0 shown as "1:"
  std::string raw_reply;
  std::vector<Method> ranking;  // best to worst, empty when invalid
  bool valid = false;
  bool retried = false;
  std::string judge_model;

  json to_json() const {
    json j;
    j["sample"] = sample_ref;
    j["criterion"] = xplain::to_string(criterion);
    j["ground_truth"] = ground_truth;
    json shown_j = json::array();
    for (Method m : shown) shown_j.push_back(xplain::to_string(m));
    j["shown"] = shown_j;
    j["reply"] = raw_reply;
    json rank_j = json::array();
    for (Method m : ranking) rank_j.push_back(xplain::to_string(m));
    j["ranking"] = rank_j;
    j["valid"] = valid;
    j["retried"] = retried;
    j["judge_model"] = judge_model;
    return j;
  }

  static RankingRecord from_json(const json& j) {
    RankingRecord r;
    r.sample_ref = j.at("sample").get<std::string>();
    r.criterion = criterion_from_string(j.at("criterion").get<std::string>());
    r.ground_truth = j.at("ground_truth").get<std::string>();
    for (const auto& m : j.at("shown")) r.shown.push_back(method_from_string(m.get<std::string>()));
    r.raw_reply = j.at("reply").get<std::string>();
    for (const auto& m : j.at("ranking")) {
      r.ranking.push_back(method_from_string(m.get<std::string>()));
    }
    r.valid = j.at("valid").get<bool>();
    r.retried = j.at("retried").get<bool>();
    r.judge_model = j.at("judge_model").get<std::string>();
    return r;
  }
};

/// Extracts a best-to-worst ordering from the judge's reply: the first three
/// distinct digits in {1, 2, 3}, in order of appearance.
inline std::optional<std::array<int, 3>> parse_judge_reply(const std::string& reply) {
  std::array<int, 3> order{};
  std::array<bool, 3> seen{};
  size_t n = 0;
  for (char c : reply) {
    if (c < '1' || c > '3') continue;
    int idx = c - '1';
    if (seen[static_cast<size_t>(idx)]) continue;
    seen[static_cast<size_t>(idx)] = true;
    order[n++] = idx;
    if (n == 3) return order;
  }
  return std::nullopt;
}

/// One judged triplet. Presentation order is a uniform shuffle drawn from
/// rng_seed and recorded before the call; a malformed reply earns exactly one
/// repair attempt before the record is marked invalid.
inline RankingRecord rank_triplet(ChatClient& judge, const AssetStore& assets,
                                  const std::string& sample_ref, Criterion criterion,
                                  const std::string& criterion_text,
                                  const std::string& ground_truth,
                                  const std::array<std::string, 3>& text_by_method,
                                  uint64_t rng_seed, const std::string& judge_model) {
  RankingRecord rec;
  rec.sample_ref = sample_ref;
  rec.criterion = criterion;
  rec.ground_truth = ground_truth;
  rec.judge_model = judge_model;

  rec.shown = {Method::Path, Method::State, Method::NoBR};
  Rng rng(rng_seed);
  rng.shuffle(rec.shown);

  std::string prompt = assets.text("judge/ranking_prompt.txt");
  replace_all(prompt, "{criteria}", criterion_text);
  replace_all(prompt, "{ground_truth}", ground_truth);
  for (int i = 0; i < 3; ++i) {
    replace_all(prompt, "{explanation_" + std::to_string(i + 1) + "}",
                text_by_method[static_cast<size_t>(rec.shown[static_cast<size_t>(i)])]);
  }

  std::vector<ChatMessage> convo = {{"user", prompt}};
  ChatResult res = judge.complete(convo);
  rec.raw_reply = res.text;
  auto order = parse_judge_reply(res.text);
  if (!order) {
    rec.retried = true;
    convo.push_back({"assistant", res.text});
    convo.push_back({"user", assets.text("judge/repair_prompt.txt")});
    ChatResult retry = judge.complete(convo);
    rec.raw_reply = retry.text;
    order = parse_judge_reply(retry.text);
  }
  if (order) {
    rec.valid = true;
    for (int pos : *order) rec.ranking.push_back(rec.shown[static_cast<size_t>(pos)]);
  }
  return rec;
}

struct Top1Stats {
  std::array<double, 3> ratio{};  // indexed by Method
  std::array<int, 3> wins{};
  int valid = 0;
  int excluded = 0;
  // Per-valid-record 0/1 top-1 indicators, one column per method, in input
  // order; feeds the paired t-tests.
  std::array<std::vector<double>, 3> indicators;
};

inline Top1Stats top1_ratios(const std::vector<RankingRecord>& records, Criterion criterion) {
  Top1Stats s;
  for (const RankingRecord& r : records) {
    if (r.criterion != criterion) continue;
    if (!r.valid) {
      ++s.excluded;
      continue;
    }
    ++s.valid;
    int best = static_cast<int>(r.ranking.at(0));
    ++s.wins[static_cast<size_t>(best)];
    for (int m = 0; m < 3; ++m) {
      s.indicators[static_cast<size_t>(m)].push_back(m == best ? 1.0 : 0.0);
    }
  }
  if (s.valid == 0) throw std::runtime_error("no valid ranking records for criterion");
  for (int m = 0; m < 3; ++m) {
    s.ratio[static_cast<size_t>(m)] =
        static_cast<double>(s.wins[static_cast<size_t>(m)]) / static_cast<double>(s.valid);
  }
  return s;
}

}  // namespace xplain
