#pragma once

#include "synthbench/core.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace synthbench::prompts {

struct GenerationSpec {
  TaskKind task = TaskKind::intent_detection;
  std::string task_description;
  std::string guidelines;
  std::string output_format;
  int k = 1;             // few-shot examples per intent / per score bucket
  int k_prime = 5;       // few-shot examples for NER
  int target_count = 200;
  uint64_t seed = 0;     // drives few-shot selection
};

struct Section {
  std::string name;
  std::size_t begin = 0;  // substituted content range within the rendered text
  std::size_t end = 0;
};

struct PromptText {
  std::string text;
  std::vector<Section> sections;  // in template order

  bool has_section(std::string_view name) const;
  std::string_view section(std::string_view name) const;
};

// Placeholders the templates must carry, one occurrence each.
//   generation: {task_description} {examples} {guidelines} {output_format}
//   solve:      {task_description} {output_format} {input}
struct TemplateSet {
  std::string generation;
  std::string solve;
};

TemplateSet default_templates();
// Reads generation.tmpl and solve.tmpl from a directory.
TemplateSet load_templates(const std::string& dir);

// Few-shot selection, deterministic in spec.seed. Intent: exactly k per
// intent; similarity: exactly k per integer score bucket 0..5 (nearest
// integer); NER: k_prime uniformly sampled examples. Returns indices into the
// dataset so callers can exclude the picks from evaluation samples.
std::vector<std::size_t> select_fewshot(const Dataset& dataset, const GenerationSpec& spec);

// Renders the four-section generation prompt. request_count is the number of
// examples this particular call asks for (chunked callers pass less than
// spec.target_count). {labels} in the description/output text expands to the
// dataset inventory; {count} to request_count.
PromptText build_generation_prompt(const GenerationSpec& spec, const Dataset& dataset,
                                   std::span<const std::size_t> fewshot, int request_count,
                                   const std::string& template_text);
PromptText build_generation_prompt(const GenerationSpec& spec, const Dataset& dataset,
                                   std::span<const std::size_t> fewshot);

struct IntentQuery {
  std::string text;
};
struct SimilarityQuery {
  std::string text_a;
  std::string text_b;
};
struct NerQuery {
  std::vector<std::string> tokens;
};
using SolveQuery = std::variant<IntentQuery, SimilarityQuery, NerQuery>;

SolveQuery query_from_example(const Dataset& dataset, std::size_t index);

// Renders the three-section solve prompt. The gold label is never part of a
// query, so it cannot leak into the rendering.
PromptText build_solve_prompt(TaskKind task, const std::string& task_description,
                              const std::string& output_format, const SolveQuery& query,
                              const std::string& template_text);
PromptText build_solve_prompt(TaskKind task, const std::string& task_description,
                              const std::string& output_format, const SolveQuery& query);

// The rendered input block, exactly as it appears in the solve prompt.
std::string render_query(const SolveQuery& query);

// Comma-separated inventory listing used for {labels}.
std::string render_labels(std::span<const std::string> inventory);

// Integer score bucket used for per-score few-shot strata.
int score_bucket(double score);

// Task defaults for descriptions/guidelines/output formats (own wording,
// overridable via config).
GenerationSpec default_generation_spec(TaskKind task);
struct SolveTexts {
  std::string task_description;
  std::string output_format;
};
SolveTexts default_solve_texts(TaskKind task);

}  // namespace synthbench::prompts
