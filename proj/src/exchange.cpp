#include "synthbench/exchange.hpp"

#include "synthbench/errors.hpp"
#include "synthbench/util.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

namespace synthbench::exchange {

namespace {

// Field values must stay single-line and tab-free; the separator owns those.
std::string sanitize_field(std::string_view s) {
  std::string out(s);
  std::replace(out.begin(), out.end(), '\t', ' ');
  std::replace(out.begin(), out.end(), '\n', ' ');
  std::replace(out.begin(), out.end(), '\r', ' ');
  return out;
}

bool parse_full_double(const std::string& s, double& out) {
  const std::string t = trim(s);
  if (t.empty()) return false;
  const char* begin = t.data();
  const char* end = t.data() + t.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end;
}

bool valid_type_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
}

}  // namespace

std::string serialize(const IntentExample& example) {
  return sanitize_field(example.text) + "\t" + sanitize_field(example.label);
}

std::string serialize(const SimilarityExample& example) {
  return sanitize_field(example.text_a) + "\t" + sanitize_field(example.text_b) + "\t" +
         format_double(example.score);
}

std::string serialize(const NerExample& example) {
  std::vector<EntitySpan> spans = example.spans;
  std::sort(spans.begin(), spans.end(),
            [](const EntitySpan& a, const EntitySpan& b) { return a.start < b.start; });
  std::ostringstream out;
  std::size_t next_span = 0;
  for (std::size_t i = 0; i < example.tokens.size();) {
    if (i > 0) out << ' ';
    if (next_span < spans.size() && static_cast<std::size_t>(spans[next_span].start) == i) {
      const EntitySpan& s = spans[next_span];
      out << '[';
      for (int t = s.start; t < s.end; ++t) {
        if (t > s.start) out << ' ';
        out << example.tokens[static_cast<std::size_t>(t)];
      }
      out << "](" << s.entity_type << ')';
      i = static_cast<std::size_t>(s.end);
      ++next_span;
    } else {
      out << example.tokens[i];
      ++i;
    }
  }
  return out.str();
}

std::string serialize_example(const Dataset& dataset, std::size_t index) {
  switch (dataset.task) {
    case TaskKind::intent_detection: return serialize(dataset.intents().at(index));
    case TaskKind::text_similarity: return serialize(dataset.pairs().at(index));
    case TaskKind::ner: return serialize(dataset.sentences().at(index));
  }
  throw Error("serialize_example: unknown task");
}

std::optional<IntentExample> parse_intent_record(const std::string& line) {
  auto fields = split(line, '\t');
  if (fields.size() != 2) return std::nullopt;
  IntentExample ex{trim(fields[0]), trim(fields[1])};
  if (ex.text.empty() || ex.label.empty()) return std::nullopt;
  return ex;
}

std::optional<SimilarityExample> parse_similarity_record(const std::string& line) {
  auto fields = split(line, '\t');
  if (fields.size() != 3) return std::nullopt;
  SimilarityExample ex;
  ex.text_a = trim(fields[0]);
  ex.text_b = trim(fields[1]);
  if (ex.text_a.empty() || ex.text_b.empty()) return std::nullopt;
  if (!parse_full_double(fields[2], ex.score)) return std::nullopt;
  return ex;
}

namespace {

// Returns the end position (one past ')') of a well-formed group starting at
// an opening '[' at `pos`, or npos if the construct is not a group.
std::size_t group_end(const std::string& text, std::size_t pos, std::string* surface,
                      std::string* type) {
  // the group closes at the first ']'; it must be immediately followed by '('
  const std::size_t close = text.find(']', pos + 1);
  if (close == std::string::npos) return std::string::npos;
  if (close + 1 >= text.size() || text[close + 1] != '(') return std::string::npos;
  std::size_t type_end = close + 2;
  while (type_end < text.size() && valid_type_char(text[type_end])) ++type_end;
  if (type_end == close + 2) return std::string::npos;              // empty type
  if (type_end >= text.size() || text[type_end] != ')') return std::string::npos;
  const std::string inner = trim(text.substr(pos + 1, close - pos - 1));
  if (inner.empty()) return std::string::npos;
  if (surface) *surface = collapse_whitespace(inner);
  if (type) *type = text.substr(close + 2, type_end - close - 2);
  return type_end + 1;
}

}  // namespace

std::vector<EntityGroup> scan_entity_groups(const std::string& text) {
  std::vector<EntityGroup> groups;
  std::size_t pos = 0;
  while ((pos = text.find('[', pos)) != std::string::npos) {
    std::string surface, type;
    const std::size_t end = group_end(text, pos, &surface, &type);
    if (end == std::string::npos) {
      ++pos;
      continue;
    }
    groups.push_back({surface, type});
    pos = end;
  }
  return groups;
}

std::optional<NerExample> parse_ner_record(const std::string& line) {
  NerExample ex;
  std::size_t pos = 0;
  const std::size_t size = line.size();
  while (pos < size) {
    while (pos < size && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
    if (pos >= size) break;
    if (line[pos] == '[') {
      std::string surface, type;
      const std::size_t end = group_end(line, pos, &surface, &type);
      if (end != std::string::npos) {
        const auto tokens = split_whitespace(surface);
        const int start = static_cast<int>(ex.tokens.size());
        for (const auto& t : tokens) ex.tokens.push_back(t);
        ex.spans.push_back({start, start + static_cast<int>(tokens.size()), type});
        pos = end;
        continue;
      }
    }
    // plain token
    std::size_t begin = pos;
    while (pos < size && !std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
    ex.tokens.push_back(line.substr(begin, pos - begin));
  }
  if (ex.tokens.empty()) return std::nullopt;
  return ex;
}

}  // namespace synthbench::exchange
