#pragma once

#include "synthbench/core.hpp"

#include <optional>
#include <string>
#include <vector>

// The structured record format exchanged with models: few-shot examples are
// rendered with it and generated data / NER answers are parsed from it.
// Documented bit-exactly in docs/exchange-format.md.
//
//   intent record:      <text> TAB <label>
//   similarity record:  <text_a> TAB <text_b> TAB <score>
//   ner record:         space-joined tokens with entities wrapped inline,
//                       e.g.  [John Smith](PER) runs
namespace synthbench::exchange {

std::string serialize(const IntentExample& example);
std::string serialize(const SimilarityExample& example);
std::string serialize(const NerExample& example);

// One record line for dataset example `index`.
std::string serialize_example(const Dataset& dataset, std::size_t index);

std::optional<IntentExample> parse_intent_record(const std::string& line);
std::optional<SimilarityExample> parse_similarity_record(const std::string& line);
std::optional<NerExample> parse_ner_record(const std::string& line);

// An inline entity annotation found in free text.
struct EntityGroup {
  std::string surface;  // tokens inside the brackets, space separated
  std::string type;
};

// Scans text for [surface](TYPE) groups. Unparseable bracket constructs are
// treated as literal text.
std::vector<EntityGroup> scan_entity_groups(const std::string& text);

}  // namespace synthbench::exchange
