#include "synthbench/promptkit.hpp"

#include "synthbench/errors.hpp"
#include "synthbench/exchange.hpp"
#include "synthbench/util.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

namespace synthbench::prompts {

namespace {

constexpr const char* kGenerationTemplate =
    "## Task\n"
    "{task_description}\n"
    "\n"
    "## Examples\n"
    "{examples}\n"
    "\n"
    "## Guidelines\n"
    "{guidelines}\n"
    "\n"
    "## Output\n"
    "{output_format}\n";

constexpr const char* kSolveTemplate =
    "## Task\n"
    "{task_description}\n"
    "\n"
    "## Output\n"
    "{output_format}\n"
    "\n"
    "## Input\n"
    "{input}\n";

PromptText render_template(const std::string& tmpl,
                           const std::vector<std::pair<std::string, std::string>>& subs) {
  struct Slot {
    std::size_t pos;
    std::size_t placeholder_len;
    std::string name;
    const std::string* value;
  };
  std::vector<Slot> slots;
  for (const auto& [name, value] : subs) {
    const std::string placeholder = "{" + name + "}";
    const std::size_t count = count_occurrences(tmpl, placeholder);
    if (count != 1)
      throw ConfigError("template must contain " + placeholder + " exactly once (found " +
                        std::to_string(count) + ")");
    slots.push_back({tmpl.find(placeholder), placeholder.size(), name, &value});
  }
  std::sort(slots.begin(), slots.end(), [](const Slot& a, const Slot& b) { return a.pos < b.pos; });

  PromptText prompt;
  std::size_t cursor = 0;
  for (const auto& slot : slots) {
    prompt.text.append(tmpl, cursor, slot.pos - cursor);
    Section section{slot.name, prompt.text.size(), 0};
    prompt.text.append(*slot.value);
    section.end = prompt.text.size();
    prompt.sections.push_back(std::move(section));
    cursor = slot.pos + slot.placeholder_len;
  }
  prompt.text.append(tmpl, cursor, tmpl.size() - cursor);
  return prompt;
}

std::string replace_all(std::string text, const std::string& placeholder,
                        const std::string& value) {
  std::size_t pos = 0;
  while ((pos = text.find(placeholder, pos)) != std::string::npos) {
    text.replace(pos, placeholder.size(), value);
    pos += value.size();
  }
  return text;
}

// Deterministic k-out-of-n pick: partial Fisher-Yates with modulo draws, so
// the selection depends only on (pool, k, rng state).
std::vector<std::size_t> pick_k(std::vector<std::size_t> pool, std::size_t k,
                                std::mt19937_64& rng) {
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng() % (pool.size() - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  return pool;
}

void validate_spec(const GenerationSpec& spec) {
  if (spec.task == TaskKind::ner) {
    if (spec.k_prime < 1) throw ConfigError("generation spec: k_prime must be >= 1");
  } else {
    if (spec.k < 1) throw ConfigError("generation spec: k must be >= 1");
  }
  if (spec.target_count < 1) throw ConfigError("generation spec: target_count must be >= 1");
}

}  // namespace

bool PromptText::has_section(std::string_view name) const {
  return std::any_of(sections.begin(), sections.end(),
                     [&](const Section& s) { return s.name == name; });
}

std::string_view PromptText::section(std::string_view name) const {
  for (const auto& s : sections)
    if (s.name == name) return std::string_view(text).substr(s.begin, s.end - s.begin);
  throw Error("prompt has no section named " + std::string(name));
}

TemplateSet default_templates() {
  return {kGenerationTemplate, kSolveTemplate};
}

TemplateSet load_templates(const std::string& dir) {
  return {read_file(dir + "/generation.tmpl"), read_file(dir + "/solve.tmpl")};
}

int score_bucket(double score) {
  const long bucket = std::lround(score);
  return static_cast<int>(std::clamp(bucket, 0L, 5L));
}

std::string render_labels(std::span<const std::string> inventory) {
  std::string out;
  for (std::size_t i = 0; i < inventory.size(); ++i) {
    if (i > 0) out += ", ";
    out += inventory[i];
  }
  return out;
}

std::vector<std::size_t> select_fewshot(const Dataset& dataset, const GenerationSpec& spec) {
  if (dataset.task != spec.task)
    throw ConfigError("few-shot selection: dataset task does not match spec task");
  validate_spec(spec);
  std::mt19937_64 rng(spec.seed);
  std::vector<std::size_t> selected;

  switch (spec.task) {
    case TaskKind::intent_detection: {
      std::map<std::string, std::vector<std::size_t>> by_label;
      const auto& xs = dataset.intents();
      for (std::size_t i = 0; i < xs.size(); ++i) by_label[xs[i].label].push_back(i);
      std::vector<std::string> strata(dataset.label_inventory.begin(),
                                      dataset.label_inventory.end());
      std::sort(strata.begin(), strata.end());
      strata.erase(std::unique(strata.begin(), strata.end()), strata.end());
      const std::size_t k = static_cast<std::size_t>(spec.k);
      for (const auto& label : strata) {
        auto it = by_label.find(label);
        if (it == by_label.end() || it->second.size() < k)
          throw Error("few-shot selection: intent '" + label + "' has fewer than " +
                      std::to_string(spec.k) + " examples");
        auto picks = pick_k(it->second, k, rng);
        selected.insert(selected.end(), picks.begin(), picks.end());
      }
      break;
    }
    case TaskKind::text_similarity: {
      std::map<int, std::vector<std::size_t>> by_bucket;
      const auto& xs = dataset.pairs();
      for (std::size_t i = 0; i < xs.size(); ++i) by_bucket[score_bucket(xs[i].score)].push_back(i);
      const std::size_t k = static_cast<std::size_t>(spec.k);
      for (int bucket = 0; bucket <= 5; ++bucket) {
        auto it = by_bucket.find(bucket);
        if (it == by_bucket.end() || it->second.size() < k)
          throw Error("few-shot selection: score bucket " + std::to_string(bucket) +
                      " has fewer than " + std::to_string(spec.k) + " examples");
        auto picks = pick_k(it->second, k, rng);
        selected.insert(selected.end(), picks.begin(), picks.end());
      }
      break;
    }
    case TaskKind::ner: {
      const std::size_t k = static_cast<std::size_t>(spec.k_prime);
      if (dataset.size() < k)
        throw Error("few-shot selection: dataset has fewer than " +
                    std::to_string(spec.k_prime) + " examples");
      std::vector<std::size_t> pool(dataset.size());
      std::iota(pool.begin(), pool.end(), std::size_t{0});
      selected = pick_k(std::move(pool), k, rng);
      break;
    }
  }
  std::sort(selected.begin(), selected.end());
  return selected;
}

PromptText build_generation_prompt(const GenerationSpec& spec, const Dataset& dataset,
                                   std::span<const std::size_t> fewshot, int request_count,
                                   const std::string& template_text) {
  validate_spec(spec);
  if (request_count < 1) throw ConfigError("generation prompt: request_count must be >= 1");

  const std::string labels = render_labels(dataset.label_inventory);
  const std::string count = std::to_string(request_count);

  std::ostringstream examples;
  for (std::size_t i = 0; i < fewshot.size(); ++i) {
    if (i > 0) examples << '\n';
    examples << exchange::serialize_example(dataset, fewshot[i]);
  }

  std::string output = replace_all(spec.output_format, "{labels}", labels);
  if (output.find("{count}") != std::string::npos) {
    output = replace_all(output, "{count}", count);
  } else {
    output += "\nProduce exactly " + count + " examples.";
  }

  return render_template(
      template_text,
      {{"task_description", replace_all(spec.task_description, "{labels}", labels)},
       {"examples", examples.str()},
       {"guidelines", replace_all(spec.guidelines, "{labels}", labels)},
       {"output_format", output}});
}

PromptText build_generation_prompt(const GenerationSpec& spec, const Dataset& dataset,
                                   std::span<const std::size_t> fewshot) {
  return build_generation_prompt(spec, dataset, fewshot, spec.target_count,
                                 default_templates().generation);
}

SolveQuery query_from_example(const Dataset& dataset, std::size_t index) {
  switch (dataset.task) {
    case TaskKind::intent_detection: return IntentQuery{dataset.intents().at(index).text};
    case TaskKind::text_similarity: {
      const auto& ex = dataset.pairs().at(index);
      return SimilarityQuery{ex.text_a, ex.text_b};
    }
    case TaskKind::ner: return NerQuery{dataset.sentences().at(index).tokens};
  }
  throw Error("query_from_example: unknown task");
}

std::string render_query(const SolveQuery& query) {
  if (const auto* q = std::get_if<IntentQuery>(&query)) return "Utterance: " + q->text;
  if (const auto* q = std::get_if<SimilarityQuery>(&query))
    return "Sentence A: " + q->text_a + "\nSentence B: " + q->text_b;
  const auto& q = std::get<NerQuery>(query);
  std::string out = "Text: ";
  for (std::size_t i = 0; i < q.tokens.size(); ++i) {
    if (i > 0) out += ' ';
    out += q.tokens[i];
  }
  return out;
}

namespace {

bool query_matches_task(TaskKind task, const SolveQuery& query) {
  switch (task) {
    case TaskKind::intent_detection: return std::holds_alternative<IntentQuery>(query);
    case TaskKind::text_similarity: return std::holds_alternative<SimilarityQuery>(query);
    case TaskKind::ner: return std::holds_alternative<NerQuery>(query);
  }
  return false;
}

}  // namespace

PromptText build_solve_prompt(TaskKind task, const std::string& task_description,
                              const std::string& output_format, const SolveQuery& query,
                              const std::string& template_text) {
  if (!query_matches_task(task, query))
    throw Error("solve prompt: datapoint does not match task " + std::string(to_string(task)));
  return render_template(template_text, {{"task_description", task_description},
                                         {"output_format", output_format},
                                         {"input", render_query(query)}});
}

PromptText build_solve_prompt(TaskKind task, const std::string& task_description,
                              const std::string& output_format, const SolveQuery& query) {
  return build_solve_prompt(task, task_description, output_format, query,
                            default_templates().solve);
}

GenerationSpec default_generation_spec(TaskKind task) {
  GenerationSpec spec;
  spec.task = task;
  switch (task) {
    case TaskKind::intent_detection:
      spec.task_description =
          "You are preparing data for an intent classification system. Each example is a "
          "short user utterance paired with exactly one intent label. The possible intent "
          "labels are: {labels}.";
      spec.guidelines =
          "Write natural, varied utterances a real user might type or say. Vary wording, "
          "sentence length, and vocabulary. Do not copy the examples.";
      spec.output_format =
          "Write {count} new examples, one per line. Each line is the utterance, a tab "
          "character, then the intent label. Output only the example lines.";
      break;
    case TaskKind::text_similarity:
      spec.task_description =
          "You are preparing data for a sentence similarity task. Each example is a pair of "
          "sentences scored for semantic similarity on a scale from zero (unrelated) to five "
          "(equivalent in meaning). Decimal scores are allowed.";
      spec.guidelines =
          "Cover the whole similarity scale, including unrelated, loosely related, and nearly "
          "identical pairs. Keep sentences short and self-contained.";
      spec.output_format =
          "Write {count} new examples, one per line. Each line is the first sentence, a tab "
          "character, the second sentence, a tab character, then the similarity score. Output "
          "only the example lines.";
      break;
    case TaskKind::ner:
      spec.task_description =
          "You are preparing data for a named entity recognition task. Each example is a "
          "single sentence in which every entity mention is wrapped inline as [mention](TYPE). "
          "The possible entity types are: {labels}.";
      spec.guidelines =
          "Write realistic sentences containing one or more entity mentions. Vary sentence "
          "structure and entity placement. Annotate every mention, and only use the listed "
          "types.";
      spec.output_format =
          "Write {count} new sentences, one per line, with every entity mention annotated as "
          "[mention](TYPE) exactly as in the examples. Output only the sentences.";
      break;
  }
  return spec;
}

SolveTexts default_solve_texts(TaskKind task) {
  switch (task) {
    case TaskKind::intent_detection:
      return {"Classify the intent of the utterance given below. The possible intents are: "
              "{labels}.",
              "Answer with exactly one intent label from the list above and nothing else."};
    case TaskKind::text_similarity:
      return {"Judge how similar in meaning the two sentences given below are, on a scale from "
              "zero (completely unrelated) to five (equivalent in meaning). Decimal values are "
              "allowed.",
              "Answer with a single number and nothing else."};
    case TaskKind::ner:
      return {"Find every named entity mention in the text given below. The possible entity "
              "types are: {labels}.",
              "Answer with one entity per line, each written as [mention](TYPE), where TYPE is "
              "one of the types listed above. If there are no entities, answer NONE."};
  }
  return {};
}

}  // namespace synthbench::prompts
