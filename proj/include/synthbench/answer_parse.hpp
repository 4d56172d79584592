#pragma once

#include "synthbench/core.hpp"

#include <span>
#include <string>
#include <vector>

// Converts raw completion text into structured predictions and synthetic
// datasets. Parsing is total: malformed completions become parse_error
// predictions (or counted rejections), never aborted runs.
namespace synthbench::answers {

// Case-insensitive, whitespace-normalized match against the inventory. If the
// whole answer is not a label, the answer must contain exactly one distinct
// inventory label; anything else is a parse error.
Prediction parse_intent_answer(const std::string& text, std::span<const std::string> inventory,
                               std::size_t example_index = 0);

// First real-number literal in the text, clamped to [0,5].
Prediction parse_similarity_answer(const std::string& text, std::size_t example_index = 0);

struct NerParseStats {
  int groups_seen = 0;
  int dropped_unaligned = 0;  // surface not found in the token sequence
  int dropped_overlap = 0;    // lost the earlier-longer-span tiebreak
};

// Extracts [surface](TYPE) groups and aligns each surface to token indices by
// exact token-sequence search (first occurrence). An empty answer or NONE is
// a valid "no entities" prediction.
Prediction parse_ner_answer(const std::string& text, const std::vector<std::string>& tokens,
                            std::size_t example_index = 0, NerParseStats* stats = nullptr);

struct GenerationParse {
  ExampleList examples;
  int rejected_invalid = 0;
  int rejected_duplicate = 0;

  std::size_t accepted() const;
  int rejected() const { return rejected_invalid + rejected_duplicate; }
};

// Parses exchange-format records out of a generation completion. Records that
// fail validation or carry labels outside the inventory are rejected and
// counted; exact duplicates (normalized text) are deduplicated.
GenerationParse parse_generated_examples(const std::string& text, TaskKind task,
                                         std::span<const std::string> label_inventory);

// Normalized-text identity used for deduplication, shared with callers that
// deduplicate across multiple completions.
std::string dedup_key(const IntentExample& example);
std::string dedup_key(const SimilarityExample& example);
std::string dedup_key(const NerExample& example);

}  // namespace synthbench::answers
