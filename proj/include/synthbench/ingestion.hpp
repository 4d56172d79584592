#pragma once

#include "synthbench/core.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace synthbench::ingest {

struct SamplingSpec {
  int test_size = 200;
  uint64_t seed = 0;
  bool stratified = false;  // intent-only: proportional allocation per label
};

// Identifier of the sampling algorithm (partial Fisher-Yates over mt19937_64
// with modulo draws), recorded with every sample so runs are reproducible.
inline constexpr const char* kSamplerId = "fisher-yates-mt19937_64-v1";

struct BioRepair {
  int line = 0;        // 1-based line of the repaired tag
  std::string tag;     // the I- tag that had no open span of its type
};

// CoNLL-style input: one "token<TAB>tag" per line, blank line between
// sentences, BIO tags. An I- tag without a preceding same-type span opens a
// new span (lenient repair, reported via `repairs`).
std::vector<NerExample> parse_conll(const std::string& text,
                                    std::vector<BioRepair>* repairs = nullptr);

// One "utterance<TAB>label" record per line.
std::vector<IntentExample> parse_intent_records(const std::string& text);

// One "sentence_a<TAB>sentence_b<TAB>score" record per line, score in [0,5].
std::vector<SimilarityExample> parse_sts_records(const std::string& text);

// Wraps a parsed file into a Dataset; the label inventory is the sorted set
// of labels present.
Dataset load_raw_file(const std::string& path, const std::string& id, TaskKind task,
                      const std::string& format);

// Uniform sample without replacement, reproducible from the seed. The selected
// index multiset depends only on (dataset size, seed, test_size).
Dataset sample_test_set(const Dataset& dataset, const SamplingSpec& spec);

// The index selection behind sample_test_set, exposed for auditing. Returned
// indices are sorted ascending.
std::vector<std::size_t> sample_indices(std::size_t population, const SamplingSpec& spec);

}  // namespace synthbench::ingest
