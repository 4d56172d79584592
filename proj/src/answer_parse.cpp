#include "synthbench/answer_parse.hpp"

#include "synthbench/errors.hpp"
#include "synthbench/exchange.hpp"
#include "synthbench/util.hpp"

#include <algorithm>
#include <regex>
#include <set>

namespace synthbench::answers {

Prediction parse_intent_answer(const std::string& text, std::span<const std::string> inventory,
                               std::size_t example_index) {
  if (inventory.empty()) throw Error("parse_intent_answer: empty inventory");

  Prediction pred;
  pred.example_index = example_index;

  const std::string normalized = normalize_text(text);
  for (const auto& label : inventory) {
    if (normalize_text(label) == normalized) {
      pred.payload = label;
      return pred;
    }
  }

  // fall back: the completion must mention exactly one distinct inventory label
  std::set<std::string> hits;
  const std::string* first_hit = nullptr;
  for (const auto& label : inventory) {
    if (contains_ci(text, label)) {
      if (hits.insert(label).second && !first_hit) first_hit = &label;
    }
  }
  if (hits.size() == 1) {
    pred.payload = *first_hit;
    return pred;
  }
  pred.parse_error = true;
  return pred;
}

Prediction parse_similarity_answer(const std::string& text, std::size_t example_index) {
  static const std::regex number_re(R"([-+]?(\d+(\.\d*)?|\.\d+)([eE][-+]?\d+)?)");
  Prediction pred;
  pred.example_index = example_index;

  std::smatch m;
  if (!std::regex_search(text, m, number_re)) {
    pred.parse_error = true;
    return pred;
  }
  double value = std::stod(m.str(0));
  pred.payload = std::clamp(value, 0.0, 5.0);
  return pred;
}

Prediction parse_ner_answer(const std::string& text, const std::vector<std::string>& tokens,
                            std::size_t example_index, NerParseStats* stats) {
  Prediction pred;
  pred.example_index = example_index;

  NerParseStats local;
  std::vector<EntitySpan> aligned;
  for (const auto& group : exchange::scan_entity_groups(text)) {
    ++local.groups_seen;
    const auto surface_tokens = split_whitespace(group.surface);
    if (surface_tokens.empty()) {
      ++local.dropped_unaligned;
      continue;
    }
    // exact token-sequence search, first occurrence
    int start = -1;
    for (std::size_t i = 0; i + surface_tokens.size() <= tokens.size(); ++i) {
      if (std::equal(surface_tokens.begin(), surface_tokens.end(), tokens.begin() + i)) {
        start = static_cast<int>(i);
        break;
      }
    }
    if (start < 0) {
      ++local.dropped_unaligned;
      continue;
    }
    aligned.push_back({start, start + static_cast<int>(surface_tokens.size()), group.type});
  }

  // overlap resolution: keep the earlier span, longer on ties
  std::stable_sort(aligned.begin(), aligned.end(), [](const EntitySpan& a, const EntitySpan& b) {
    if (a.start != b.start) return a.start < b.start;
    return a.length() > b.length();
  });
  std::vector<EntitySpan> kept;
  for (const auto& span : aligned) {
    const bool clashes = std::any_of(kept.begin(), kept.end(),
                                     [&](const EntitySpan& k) { return k.overlaps(span); });
    if (clashes) {
      ++local.dropped_overlap;
      continue;
    }
    kept.push_back(span);
  }

  if (stats) *stats = local;
  pred.payload = std::move(kept);
  return pred;
}

std::string dedup_key(const IntentExample& example) {
  return normalize_text(example.text);
}

std::string dedup_key(const SimilarityExample& example) {
  return normalize_text(example.text_a) + "\x1f" + normalize_text(example.text_b);
}

std::string dedup_key(const NerExample& example) {
  std::string joined;
  for (const auto& t : example.tokens) {
    if (!joined.empty()) joined += ' ';
    joined += t;
  }
  return normalize_text(joined);
}

std::size_t GenerationParse::accepted() const {
  return std::visit([](const auto& v) { return v.size(); }, examples);
}

namespace {

bool is_noise_line(const std::string& line) {
  const std::string t = trim(line);
  return t.empty() || t.rfind("```", 0) == 0;
}

}  // namespace

GenerationParse parse_generated_examples(const std::string& text, TaskKind task,
                                         std::span<const std::string> label_inventory) {
  GenerationParse out;
  std::set<std::string> inventory(label_inventory.begin(), label_inventory.end());
  std::set<std::string> seen;

  switch (task) {
    case TaskKind::intent_detection: out.examples = std::vector<IntentExample>{}; break;
    case TaskKind::text_similarity: out.examples = std::vector<SimilarityExample>{}; break;
    case TaskKind::ner: out.examples = std::vector<NerExample>{}; break;
  }

  for (const auto& line : split_lines(text)) {
    if (is_noise_line(line)) continue;
    switch (task) {
      case TaskKind::intent_detection: {
        auto ex = exchange::parse_intent_record(line);
        if (!ex || !inventory.count(ex->label)) {
          ++out.rejected_invalid;
          break;
        }
        if (!seen.insert(dedup_key(*ex)).second) {
          ++out.rejected_duplicate;
          break;
        }
        std::get<std::vector<IntentExample>>(out.examples).push_back(std::move(*ex));
        break;
      }
      case TaskKind::text_similarity: {
        auto ex = exchange::parse_similarity_record(line);
        if (!ex || !(ex->score >= 0.0 && ex->score <= 5.0)) {
          ++out.rejected_invalid;
          break;
        }
        if (!seen.insert(dedup_key(*ex)).second) {
          ++out.rejected_duplicate;
          break;
        }
        std::get<std::vector<SimilarityExample>>(out.examples).push_back(std::move(*ex));
        break;
      }
      case TaskKind::ner: {
        auto ex = exchange::parse_ner_record(line);
        if (!ex || ex->spans.empty()) {
          // a generated sentence with no annotated entity teaches nothing
          ++out.rejected_invalid;
          break;
        }
        const bool types_ok = std::all_of(
            ex->spans.begin(), ex->spans.end(),
            [&](const EntitySpan& s) { return inventory.count(s.entity_type) > 0; });
        if (!types_ok) {
          ++out.rejected_invalid;
          break;
        }
        if (!seen.insert(dedup_key(*ex)).second) {
          ++out.rejected_duplicate;
          break;
        }
        std::get<std::vector<NerExample>>(out.examples).push_back(std::move(*ex));
        break;
      }
    }
  }
  return out;
}

}  // namespace synthbench::answers
