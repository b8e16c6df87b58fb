#pragma once

#include "xplain/core/types.hpp"
#include "xplain/core/util.hpp"

namespace xplain {

/// Human hallucination annotations are imported, never computed: the paper's
/// hallucination rates come from manual labeling. This module only stores and
/// aggregates them.
struct HallucinationSpan {
  int start = 0;  // byte offsets into the explanation text
  int end = 0;
  std::string flag;  // "factual_error" | "illogical_reasoning"
};

struct HallucinationAnnotation {
  std::string sample_ref;
  Method method = Method::NoBR;
  std::vector<HallucinationSpan> spans;
  std::string annotator_id;

  json to_json() const {
    json j;
    j["sample"] = sample_ref;
    j["method"] = xplain::to_string(method);
    json spans_j = json::array();
    for (const HallucinationSpan& s : spans) {
      spans_j.push_back({{"start", s.start}, {"end", s.end}, {"flag", s.flag}});
    }
    j["spans"] = spans_j;
    j["annotator"] = annotator_id;
    return j;
  }

  static HallucinationAnnotation from_json(const json& j) {
    HallucinationAnnotation a;
    a.sample_ref = j.at("sample").get<std::string>();
    a.method = method_from_string(j.at("method").get<std::string>());
    for (const auto& s : j.at("spans")) {
      HallucinationSpan span;
      span.start = s.at("start").get<int>();
      span.end = s.at("end").get<int>();
      span.flag = s.at("flag").get<std::string>();
      if (span.start < 0 || span.end <= span.start) {
        throw std::runtime_error("bad annotation span for sample " + a.sample_ref);
      }
      if (span.flag != "factual_error" && span.flag != "illogical_reasoning") {
        throw std::runtime_error("unknown annotation flag: " + span.flag);
      }
      a.spans.push_back(span);
    }
    a.annotator_id = j.at("annotator").get<std::string>();
    return a;
  }
};

inline std::vector<HallucinationAnnotation> load_annotations(const std::string& path) {
  std::vector<HallucinationAnnotation> out;
  for (const json& j : read_jsonl(path)) out.push_back(HallucinationAnnotation::from_json(j));
  return out;
}

struct AnnotationCounts {
  std::array<int, 3> annotated_by_method{};    // explanations carrying >= 1 span
  std::array<int, 3> factual_by_method{};
  std::array<int, 3> illogical_by_method{};
};

inline AnnotationCounts count_annotations(const std::vector<HallucinationAnnotation>& anns) {
  AnnotationCounts c;
  for (const HallucinationAnnotation& a : anns) {
    auto m = static_cast<size_t>(a.method);
    if (!a.spans.empty()) ++c.annotated_by_method[m];
    for (const HallucinationSpan& s : a.spans) {
      if (s.flag == "factual_error") ++c.factual_by_method[m];
      else ++c.illogical_by_method[m];
    }
  }
  return c;
}

}  // namespace xplain
