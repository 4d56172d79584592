#include "synthbench/core.hpp"

#include "synthbench/errors.hpp"
#include "synthbench/util.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace synthbench {

using nlohmann::json;

std::string_view to_string(TaskKind task) {
  switch (task) {
    case TaskKind::intent_detection: return "intent_detection";
    case TaskKind::text_similarity: return "text_similarity";
    case TaskKind::ner: return "ner";
  }
  return "unknown";
}

std::optional<TaskKind> task_from_string(std::string_view name) {
  if (name == "intent_detection") return TaskKind::intent_detection;
  if (name == "text_similarity") return TaskKind::text_similarity;
  if (name == "ner") return TaskKind::ner;
  return std::nullopt;
}

namespace {

std::size_t task_variant_index(TaskKind task) {
  switch (task) {
    case TaskKind::intent_detection: return 0;
    case TaskKind::text_similarity: return 1;
    case TaskKind::ner: return 2;
  }
  return 0;
}

ExampleList empty_examples_for(TaskKind task) {
  switch (task) {
    case TaskKind::intent_detection: return std::vector<IntentExample>{};
    case TaskKind::text_similarity: return std::vector<SimilarityExample>{};
    case TaskKind::ner: return std::vector<NerExample>{};
  }
  return std::vector<IntentExample>{};
}

}  // namespace

std::size_t Dataset::size() const {
  return std::visit([](const auto& v) { return v.size(); }, examples);
}

const std::vector<IntentExample>& Dataset::intents() const {
  if (!std::holds_alternative<std::vector<IntentExample>>(examples))
    throw Error("dataset " + id + " does not hold intent examples");
  return std::get<std::vector<IntentExample>>(examples);
}

const std::vector<SimilarityExample>& Dataset::pairs() const {
  if (!std::holds_alternative<std::vector<SimilarityExample>>(examples))
    throw Error("dataset " + id + " does not hold similarity examples");
  return std::get<std::vector<SimilarityExample>>(examples);
}

const std::vector<NerExample>& Dataset::sentences() const {
  if (!std::holds_alternative<std::vector<NerExample>>(examples))
    throw Error("dataset " + id + " does not hold ner examples");
  return std::get<std::vector<NerExample>>(examples);
}

std::vector<IntentExample>& Dataset::intents() {
  return const_cast<std::vector<IntentExample>&>(std::as_const(*this).intents());
}
std::vector<SimilarityExample>& Dataset::pairs() {
  return const_cast<std::vector<SimilarityExample>&>(std::as_const(*this).pairs());
}
std::vector<NerExample>& Dataset::sentences() {
  return const_cast<std::vector<NerExample>&>(std::as_const(*this).sentences());
}

Dataset make_dataset(std::string id, TaskKind task, Provenance provenance) {
  Dataset d;
  d.id = std::move(id);
  d.task = task;
  d.examples = empty_examples_for(task);
  d.provenance = std::move(provenance);
  return d;
}

PerformanceMatrix::PerformanceMatrix(std::string metric, std::vector<std::string> solver_ids,
                                     std::vector<std::string> dataset_ids)
    : metric_id(std::move(metric)), solvers(std::move(solver_ids)), datasets(std::move(dataset_ids)) {
  cells.assign(solvers.size(), std::vector<MatrixCell>(datasets.size()));
}

MatrixCell& PerformanceMatrix::cell(std::size_t solver, std::size_t dataset) {
  return cells.at(solver).at(dataset);
}

const MatrixCell& PerformanceMatrix::cell(std::size_t solver, std::size_t dataset) const {
  return cells.at(solver).at(dataset);
}

std::optional<std::size_t> PerformanceMatrix::solver_index(std::string_view id) const {
  for (std::size_t i = 0; i < solvers.size(); ++i)
    if (solvers[i] == id) return i;
  return std::nullopt;
}

std::optional<std::size_t> PerformanceMatrix::dataset_index(std::string_view id) const {
  for (std::size_t i = 0; i < datasets.size(); ++i)
    if (datasets[i] == id) return i;
  return std::nullopt;
}

bool PerformanceMatrix::complete() const {
  return missing_cells().empty();
}

std::vector<std::string> PerformanceMatrix::missing_cells() const {
  std::vector<std::string> missing;
  for (std::size_t i = 0; i < solvers.size(); ++i)
    for (std::size_t j = 0; j < datasets.size(); ++j)
      if (cell(i, j).missing()) missing.push_back(solvers[i] + " x " + datasets[j]);
  return missing;
}

namespace {

void check_spans(const NerExample& ex, int index, const std::set<std::string>& inventory,
                 bool inventory_declared, std::vector<Violation>& out) {
  const int token_count = static_cast<int>(ex.tokens.size());
  for (std::size_t s = 0; s < ex.spans.size(); ++s) {
    const EntitySpan& span = ex.spans[s];
    std::string where = "span " + std::to_string(s) + " (" + std::to_string(span.start) + "," +
                        std::to_string(span.end) + "," + span.entity_type + ")";
    if (span.start < 0 || span.start >= span.end)
      out.push_back({index, "span_bounds", where + ": start must satisfy 0 <= start < end"});
    if (span.end > token_count)
      out.push_back({index, "span_bounds", where + ": end exceeds token count " +
                                                std::to_string(token_count)});
    if (inventory_declared && !inventory.count(span.entity_type))
      out.push_back({index, "label_inventory", where + ": entity type not in inventory"});
    for (std::size_t t = s + 1; t < ex.spans.size(); ++t) {
      if (span.overlaps(ex.spans[t]))
        out.push_back({index, "span_overlap",
                       where + " overlaps span " + std::to_string(t)});
    }
  }
}

}  // namespace

std::vector<Violation> validate_dataset(const Dataset& dataset) {
  std::vector<Violation> out;

  if (dataset.examples.index() != task_variant_index(dataset.task)) {
    out.push_back({-1, "task_mismatch", "example storage does not match declared task"});
    return out;
  }

  std::set<std::string> inventory(dataset.label_inventory.begin(), dataset.label_inventory.end());
  const bool inventory_declared = !inventory.empty();

  switch (dataset.task) {
    case TaskKind::intent_detection: {
      const auto& xs = dataset.intents();
      for (std::size_t i = 0; i < xs.size(); ++i) {
        if (trim(xs[i].text).empty())
          out.push_back({static_cast<int>(i), "empty_text", "utterance is empty"});
        if (xs[i].label.empty())
          out.push_back({static_cast<int>(i), "empty_label", "intent label is empty"});
        else if (!inventory.count(xs[i].label))
          out.push_back({static_cast<int>(i), "label_inventory",
                         "label '" + xs[i].label + "' not in inventory"});
      }
      break;
    }
    case TaskKind::text_similarity: {
      if (inventory_declared)
        out.push_back({-1, "inventory_not_empty", "similarity datasets carry no label inventory"});
      const auto& xs = dataset.pairs();
      for (std::size_t i = 0; i < xs.size(); ++i) {
        if (trim(xs[i].text_a).empty() || trim(xs[i].text_b).empty())
          out.push_back({static_cast<int>(i), "empty_text", "sentence is empty"});
        if (!(xs[i].score >= 0.0 && xs[i].score <= 5.0) || !std::isfinite(xs[i].score))
          out.push_back({static_cast<int>(i), "score_range",
                         "score " + format_double(xs[i].score) + " outside [0,5]"});
      }
      break;
    }
    case TaskKind::ner: {
      const auto& xs = dataset.sentences();
      for (std::size_t i = 0; i < xs.size(); ++i) {
        if (xs[i].tokens.empty())
          out.push_back({static_cast<int>(i), "empty_tokens", "sentence has no tokens"});
        for (const auto& tok : xs[i].tokens)
          if (tok.empty()) {
            out.push_back({static_cast<int>(i), "empty_token", "empty token string"});
            break;
          }
        check_spans(xs[i], static_cast<int>(i), inventory, inventory_declared, out);
      }
      break;
    }
  }
  return out;
}

namespace {

json provenance_to_json(const Provenance& p) {
  json j;
  j["kind"] = p.kind == Provenance::Kind::real ? "real" : "synthetic";
  if (p.kind == Provenance::Kind::synthetic) j["generator"] = p.generator;
  return j;
}

Provenance provenance_from_json(const json& j) {
  Provenance p;
  std::string kind = j.value("kind", "real");
  if (kind == "synthetic") {
    p.kind = Provenance::Kind::synthetic;
    p.generator = j.value("generator", "");
  } else if (kind == "real") {
    p.kind = Provenance::Kind::real;
  } else {
    throw ParseError("unknown provenance kind: " + kind);
  }
  return p;
}

json example_to_json(const IntentExample& ex) {
  return json{{"record", "example"}, {"text", ex.text}, {"label", ex.label}};
}

json example_to_json(const SimilarityExample& ex) {
  return json{{"record", "example"}, {"text_a", ex.text_a}, {"text_b", ex.text_b}, {"score", ex.score}};
}

json example_to_json(const NerExample& ex) {
  json spans = json::array();
  for (const auto& s : ex.spans)
    spans.push_back(json{{"start", s.start}, {"end", s.end}, {"type", s.entity_type}});
  return json{{"record", "example"}, {"tokens", ex.tokens}, {"spans", spans}};
}

}  // namespace

std::string serialize_dataset(const Dataset& dataset) {
  std::ostringstream out;
  json header;
  header["record"] = "dataset";
  header["id"] = dataset.id;
  header["task"] = std::string(to_string(dataset.task));
  header["label_inventory"] = dataset.label_inventory;
  header["provenance"] = provenance_to_json(dataset.provenance);
  if (dataset.partial) header["partial"] = true;
  if (dataset.sampling) {
    header["sampling"] = json{{"sampler", dataset.sampling->sampler_id},
                              {"seed", dataset.sampling->seed},
                              {"test_size", dataset.sampling->test_size}};
  }
  out << header.dump() << '\n';
  std::visit(
      [&out](const auto& xs) {
        for (const auto& ex : xs) out << example_to_json(ex).dump() << '\n';
      },
      dataset.examples);
  return out.str();
}

Dataset parse_dataset(const std::string& text) {
  auto lines = split_lines(text);
  std::optional<Dataset> dataset;
  int line_no = 0;
  for (const auto& line : lines) {
    ++line_no;
    if (trim(line).empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw ParseError(std::string("bad json record: ") + e.what(), line_no);
    }
    const std::string record = j.value("record", "");
    if (record == "dataset") {
      if (dataset) throw ParseError("duplicate dataset header", line_no);
      Dataset d;
      d.id = j.value("id", "");
      auto task = task_from_string(j.value("task", ""));
      if (!task) throw ParseError("unknown task: " + j.value("task", ""), line_no);
      d.task = *task;
      d.examples = empty_examples_for(d.task);
      d.label_inventory = j.value("label_inventory", std::vector<std::string>{});
      if (j.contains("provenance")) d.provenance = provenance_from_json(j["provenance"]);
      d.partial = j.value("partial", false);
      if (j.contains("sampling")) {
        const json& s = j["sampling"];
        d.sampling = SamplingInfo{s.value("sampler", ""), s.value("seed", uint64_t{0}),
                                  s.value("test_size", 0)};
      }
      dataset = std::move(d);
    } else if (record == "example") {
      if (!dataset) throw ParseError("example record before dataset header", line_no);
      try {
        switch (dataset->task) {
          case TaskKind::intent_detection:
            dataset->intents().push_back({j.at("text").get<std::string>(),
                                          j.at("label").get<std::string>()});
            break;
          case TaskKind::text_similarity:
            dataset->pairs().push_back({j.at("text_a").get<std::string>(),
                                        j.at("text_b").get<std::string>(),
                                        j.at("score").get<double>()});
            break;
          case TaskKind::ner: {
            NerExample ex;
            ex.tokens = j.at("tokens").get<std::vector<std::string>>();
            for (const auto& s : j.value("spans", json::array()))
              ex.spans.push_back({s.at("start").get<int>(), s.at("end").get<int>(),
                                  s.at("type").get<std::string>()});
            dataset->sentences().push_back(std::move(ex));
            break;
          }
        }
      } catch (const json::exception& e) {
        throw ParseError(std::string("bad example record: ") + e.what(), line_no);
      }
    } else {
      throw ParseError("unknown record kind: " + record, line_no);
    }
  }
  if (!dataset) throw ParseError("no dataset header record found");
  return *std::move(dataset);
}

void save_dataset(const Dataset& dataset, const std::string& path) {
  write_file(path, serialize_dataset(dataset));
}

Dataset load_dataset(const std::string& path) {
  return parse_dataset(read_file(path));
}

}  // namespace synthbench
