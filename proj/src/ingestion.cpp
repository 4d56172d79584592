#include "synthbench/ingestion.hpp"

#include "synthbench/errors.hpp"
#include "synthbench/util.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <type_traits>

namespace synthbench::ingest {

namespace {

struct BioTag {
  enum class Kind { outside, begin, inside } kind = Kind::outside;
  std::string type;
};

BioTag parse_bio_tag(const std::string& tag, int line) {
  if (tag == "O") return {BioTag::Kind::outside, ""};
  if (tag.size() > 2 && tag[1] == '-' && (tag[0] == 'B' || tag[0] == 'I'))
    return {tag[0] == 'B' ? BioTag::Kind::begin : BioTag::Kind::inside, tag.substr(2)};
  throw ParseError("malformed BIO tag '" + tag + "'", line);
}

}  // namespace

std::vector<NerExample> parse_conll(const std::string& text, std::vector<BioRepair>* repairs) {
  std::vector<NerExample> examples;
  NerExample current;
  int open_start = -1;
  std::string open_type;

  auto close_span = [&](int end) {
    if (open_start >= 0) current.spans.push_back({open_start, end, open_type});
    open_start = -1;
    open_type.clear();
  };
  auto flush_sentence = [&]() {
    close_span(static_cast<int>(current.tokens.size()));
    if (!current.tokens.empty()) examples.push_back(std::move(current));
    current = {};
  };

  int line_no = 0;
  for (const auto& line : split_lines(text)) {
    ++line_no;
    if (trim(line).empty()) {
      flush_sentence();
      continue;
    }
    const auto fields = split(line, '\t');
    if (fields.size() != 2)
      throw ParseError("expected 'token<TAB>tag', got " + std::to_string(fields.size()) +
                           " fields",
                       line_no);
    const std::string token = trim(fields[0]);
    if (token.empty()) throw ParseError("empty token", line_no);
    const BioTag tag = parse_bio_tag(trim(fields[1]), line_no);

    const int index = static_cast<int>(current.tokens.size());
    switch (tag.kind) {
      case BioTag::Kind::outside:
        close_span(index);
        break;
      case BioTag::Kind::begin:
        close_span(index);
        open_start = index;
        open_type = tag.type;
        break;
      case BioTag::Kind::inside:
        if (open_start >= 0 && open_type == tag.type) break;  // continues the run
        // lenient repair: treat as the start of a new span
        close_span(index);
        open_start = index;
        open_type = tag.type;
        if (repairs) repairs->push_back({line_no, "I-" + tag.type});
        break;
    }
    current.tokens.push_back(token);
  }
  flush_sentence();
  return examples;
}

std::vector<IntentExample> parse_intent_records(const std::string& text) {
  std::vector<IntentExample> examples;
  int line_no = 0;
  for (const auto& line : split_lines(text)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split(line, '\t');
    if (fields.size() != 2)
      throw ParseError("expected 'utterance<TAB>label', got " + std::to_string(fields.size()) +
                           " fields",
                       line_no);
    IntentExample ex{trim(fields[0]), trim(fields[1])};
    if (ex.text.empty()) throw ParseError("empty utterance", line_no);
    if (ex.label.empty()) throw ParseError("empty intent label", line_no);
    examples.push_back(std::move(ex));
  }
  return examples;
}

std::vector<SimilarityExample> parse_sts_records(const std::string& text) {
  std::vector<SimilarityExample> examples;
  int line_no = 0;
  for (const auto& line : split_lines(text)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split(line, '\t');
    if (fields.size() != 3)
      throw ParseError("expected 'sentence_a<TAB>sentence_b<TAB>score', got " +
                           std::to_string(fields.size()) + " fields",
                       line_no);
    SimilarityExample ex;
    ex.text_a = trim(fields[0]);
    ex.text_b = trim(fields[1]);
    if (ex.text_a.empty() || ex.text_b.empty()) throw ParseError("empty sentence", line_no);
    const std::string score_str = trim(fields[2]);
    const char* begin = score_str.data();
    const char* end = begin + score_str.size();
    auto [ptr, ec] = std::from_chars(begin, end, ex.score);
    if (ec != std::errc() || ptr != end)
      throw ParseError("unparseable score '" + score_str + "'", line_no);
    if (!(ex.score >= 0.0 && ex.score <= 5.0))
      throw ParseError("score " + score_str + " outside [0,5]", line_no);
    examples.push_back(std::move(ex));
  }
  return examples;
}

Dataset load_raw_file(const std::string& path, const std::string& id, TaskKind task,
                      const std::string& format) {
  const std::string text = read_file(path);
  Dataset dataset = make_dataset(id, task);

  if (format == "conll") {
    if (task != TaskKind::ner) throw ConfigError("conll format requires the ner task");
    dataset.sentences() = parse_conll(text);
    std::set<std::string> types;
    for (const auto& ex : dataset.sentences())
      for (const auto& s : ex.spans) types.insert(s.entity_type);
    dataset.label_inventory.assign(types.begin(), types.end());
  } else if (format == "tsv") {
    switch (task) {
      case TaskKind::intent_detection: {
        dataset.intents() = parse_intent_records(text);
        std::set<std::string> labels;
        for (const auto& ex : dataset.intents()) labels.insert(ex.label);
        dataset.label_inventory.assign(labels.begin(), labels.end());
        break;
      }
      case TaskKind::text_similarity:
        dataset.pairs() = parse_sts_records(text);
        break;
      case TaskKind::ner:
        throw ConfigError("ner datasets use the conll format");
    }
  } else if (format == "jsonl") {
    dataset = parse_dataset(text);
    if (dataset.task != task)
      throw ConfigError("dataset file " + path + " holds task " +
                        std::string(to_string(dataset.task)) + ", expected " +
                        std::string(to_string(task)));
    dataset.id = id;
  } else {
    throw ConfigError("unknown dataset format: " + format);
  }
  return dataset;
}

namespace {

// k distinct draws via partial Fisher-Yates; modulo draws keep the selection
// reproducible across standard library implementations.
std::vector<std::size_t> pick_from(std::vector<std::size_t> pool, std::size_t k,
                                   std::mt19937_64& rng) {
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng() % (pool.size() - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  return pool;
}

}  // namespace

std::vector<std::size_t> sample_indices(std::size_t population, const SamplingSpec& spec) {
  if (spec.test_size < 1) throw ConfigError("sampling: test_size must be >= 1");
  if (static_cast<std::size_t>(spec.test_size) > population)
    throw ConfigError("sampling: test_size " + std::to_string(spec.test_size) +
                      " exceeds dataset size " + std::to_string(population));
  std::mt19937_64 rng(spec.seed);
  std::vector<std::size_t> pool(population);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  auto picked = pick_from(std::move(pool), static_cast<std::size_t>(spec.test_size), rng);
  std::sort(picked.begin(), picked.end());
  return picked;
}

namespace {

std::vector<std::size_t> stratified_indices(const Dataset& dataset, const SamplingSpec& spec) {
  if (dataset.task != TaskKind::intent_detection)
    throw ConfigError("stratified sampling is only defined for intent datasets");
  if (spec.test_size < 1) throw ConfigError("sampling: test_size must be >= 1");
  if (static_cast<std::size_t>(spec.test_size) > dataset.size())
    throw ConfigError("sampling: test_size " + std::to_string(spec.test_size) +
                      " exceeds dataset size " + std::to_string(dataset.size()));
  const auto& xs = dataset.intents();
  std::map<std::string, std::vector<std::size_t>> by_label;
  for (std::size_t i = 0; i < xs.size(); ++i) by_label[xs[i].label].push_back(i);

  // proportional allocation with largest-remainder rounding
  const double total = static_cast<double>(xs.size());
  struct Alloc {
    std::string label;
    std::size_t quota;
    double remainder;
  };
  std::vector<Alloc> allocs;
  std::size_t assigned = 0;
  for (const auto& [label, members] : by_label) {
    const double exact = spec.test_size * static_cast<double>(members.size()) / total;
    const auto quota = static_cast<std::size_t>(exact);
    allocs.push_back({label, quota, exact - static_cast<double>(quota)});
    assigned += quota;
  }
  std::stable_sort(allocs.begin(), allocs.end(), [](const Alloc& a, const Alloc& b) {
    if (a.remainder != b.remainder) return a.remainder > b.remainder;
    return a.label < b.label;
  });
  for (std::size_t i = 0; assigned < static_cast<std::size_t>(spec.test_size); ++i) {
    auto& alloc = allocs[i % allocs.size()];
    if (alloc.quota < by_label[alloc.label].size()) {
      ++alloc.quota;
      ++assigned;
    }
  }

  std::sort(allocs.begin(), allocs.end(),
            [](const Alloc& a, const Alloc& b) { return a.label < b.label; });
  std::mt19937_64 rng(spec.seed);
  std::vector<std::size_t> selected;
  for (const auto& alloc : allocs) {
    auto picks = pick_from(by_label[alloc.label], alloc.quota, rng);
    selected.insert(selected.end(), picks.begin(), picks.end());
  }
  std::sort(selected.begin(), selected.end());
  return selected;
}

}  // namespace

Dataset sample_test_set(const Dataset& dataset, const SamplingSpec& spec) {
  const auto indices = spec.stratified ? stratified_indices(dataset, spec)
                                       : sample_indices(dataset.size(), spec);
  Dataset sample = make_dataset(dataset.id, dataset.task, dataset.provenance);
  sample.label_inventory = dataset.label_inventory;
  sample.sampling = SamplingInfo{kSamplerId, spec.seed, spec.test_size};
  std::visit(
      [&indices](const auto& source, auto& target) {
        using S = std::decay_t<decltype(source)>;
        using T = std::decay_t<decltype(target)>;
        if constexpr (std::is_same_v<S, T>) {
          target.reserve(indices.size());
          for (auto i : indices) target.push_back(source.at(i));
        } else {
          throw Error("sample_test_set: example storage mismatch");
        }
      },
      dataset.examples, sample.examples);
  return sample;
}

}  // namespace synthbench::ingest
