#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace synthbench {

enum class TaskKind { intent_detection, text_similarity, ner };

std::string_view to_string(TaskKind task);
std::optional<TaskKind> task_from_string(std::string_view name);

struct IntentExample {
  std::string text;
  std::string label;
  bool operator==(const IntentExample&) const = default;
};

// Similarity scores live on the 0..5 STS scale and may be fractional.
struct SimilarityExample {
  std::string text_a;
  std::string text_b;
  double score = 0.0;
  bool operator==(const SimilarityExample&) const = default;
};

// Token-index span: start inclusive, end exclusive.
struct EntitySpan {
  int start = 0;
  int end = 0;
  std::string entity_type;
  bool operator==(const EntitySpan&) const = default;
  bool overlaps(const EntitySpan& other) const { return start < other.end && other.start < end; }
  int length() const { return end - start; }
};

struct NerExample {
  std::vector<std::string> tokens;
  std::vector<EntitySpan> spans;
  bool operator==(const NerExample&) const = default;
};

struct Provenance {
  enum class Kind { real, synthetic };
  Kind kind = Kind::real;
  std::string generator;  // model id that generated the data; empty for real
  bool operator==(const Provenance&) const = default;
};

// Recorded on datasets produced by sample_test_set so samples are auditable.
struct SamplingInfo {
  std::string sampler_id;
  uint64_t seed = 0;
  int test_size = 0;
  bool operator==(const SamplingInfo&) const = default;
};

using ExampleList = std::variant<std::vector<IntentExample>, std::vector<SimilarityExample>,
                                 std::vector<NerExample>>;

struct Dataset {
  std::string id;
  TaskKind task = TaskKind::intent_detection;
  ExampleList examples;
  std::vector<std::string> label_inventory;  // intents or entity types; empty for similarity
  Provenance provenance;
  bool partial = false;  // generation stopped short of its target
  std::optional<SamplingInfo> sampling;

  std::size_t size() const;

  const std::vector<IntentExample>& intents() const;
  const std::vector<SimilarityExample>& pairs() const;
  const std::vector<NerExample>& sentences() const;
  std::vector<IntentExample>& intents();
  std::vector<SimilarityExample>& pairs();
  std::vector<NerExample>& sentences();

  bool operator==(const Dataset&) const = default;
};

Dataset make_dataset(std::string id, TaskKind task, Provenance provenance = {});

// Model answer for one example. parse_error=true means the completion could not
// be read as a well-formed answer; the payload is then the invalid sentinel
// (monostate) and downstream scoring treats it as fully incorrect.
struct Prediction {
  std::size_t example_index = 0;
  std::variant<std::monostate, std::string, double, std::vector<EntitySpan>> payload;
  bool parse_error = false;

  bool has_label() const { return std::holds_alternative<std::string>(payload); }
  bool has_score() const { return std::holds_alternative<double>(payload); }
  bool has_spans() const { return std::holds_alternative<std::vector<EntitySpan>>(payload); }
  const std::string& label() const { return std::get<std::string>(payload); }
  double score() const { return std::get<double>(payload); }
  const std::vector<EntitySpan>& spans() const { return std::get<std::vector<EntitySpan>>(payload); }
};

struct MatrixCell {
  std::optional<double> value;
  std::string note;             // set when the value is absent for a recorded reason
  double parse_error_rate = 0;  // fraction of predictions that were parse errors

  bool missing() const { return !value.has_value() && note.empty(); }
};

// Metric values indexed by (solver, dataset). Rows are solvers, columns datasets.
struct PerformanceMatrix {
  std::string metric_id;
  TaskKind task = TaskKind::intent_detection;
  std::string real_dataset_id;  // the real dataset this matrix belongs to
  std::vector<std::string> solvers;
  std::vector<std::string> datasets;
  std::vector<std::vector<MatrixCell>> cells;

  PerformanceMatrix() = default;
  PerformanceMatrix(std::string metric, std::vector<std::string> solver_ids,
                    std::vector<std::string> dataset_ids);

  MatrixCell& cell(std::size_t solver, std::size_t dataset);
  const MatrixCell& cell(std::size_t solver, std::size_t dataset) const;
  std::optional<std::size_t> solver_index(std::string_view id) const;
  std::optional<std::size_t> dataset_index(std::string_view id) const;

  // A matrix is complete when no cell is silently missing; cells carrying an
  // explanatory note (e.g. degenerate variance) count as populated.
  bool complete() const;
  std::vector<std::string> missing_cells() const;
};

struct Violation {
  int example_index = -1;  // -1 = dataset-level
  std::string rule;
  std::string detail;
};

// Pure invariant check; violations are data, not failures.
std::vector<Violation> validate_dataset(const Dataset& dataset);

// Canonical on-disk form: line-delimited JSON, one header record followed by
// one record per example.
std::string serialize_dataset(const Dataset& dataset);
Dataset parse_dataset(const std::string& text);

void save_dataset(const Dataset& dataset, const std::string& path);
Dataset load_dataset(const std::string& path);

}  // namespace synthbench
