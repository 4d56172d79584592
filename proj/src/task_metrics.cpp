#include "synthbench/task_metrics.hpp"

#include "synthbench/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

namespace synthbench::metrics {

Prf macro_prf(std::span<const std::string> gold, std::span<const std::string> pred,
              std::span<const std::string> inventory) {
  if (gold.size() != pred.size())
    throw MetricError("macro_prf: gold/pred length mismatch (" + std::to_string(gold.size()) +
                      " vs " + std::to_string(pred.size()) + ")");
  if (inventory.empty()) throw MetricError("macro_prf: empty inventory");

  std::vector<std::string> classes(inventory.begin(), inventory.end());
  std::sort(classes.begin(), classes.end());
  classes.erase(std::unique(classes.begin(), classes.end()), classes.end());

  std::map<std::string, std::size_t> tp, fp, fn;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    if (gold[i] == pred[i]) {
      ++tp[gold[i]];
    } else {
      ++fn[gold[i]];
      ++fp[pred[i]];
    }
  }

  Prf macro;
  for (const auto& c : classes) {
    const double tpc = tp.count(c) ? static_cast<double>(tp[c]) : 0.0;
    const double fpc = fp.count(c) ? static_cast<double>(fp[c]) : 0.0;
    const double fnc = fn.count(c) ? static_cast<double>(fn[c]) : 0.0;
    const double p = tpc + fpc > 0 ? tpc / (tpc + fpc) : 0.0;
    const double r = tpc + fnc > 0 ? tpc / (tpc + fnc) : 0.0;
    const double f1 = p + r > 0 ? 2.0 * p * r / (p + r) : 0.0;
    macro.precision += p;
    macro.recall += r;
    macro.f1 += f1;
  }
  const double n = static_cast<double>(classes.size());
  macro.precision /= n;
  macro.recall /= n;
  macro.f1 /= n;
  return macro;
}

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw MetricError("pearson: length mismatch");
  if (x.size() < 2) throw MetricError("pearson: need at least 2 points");

  const double n = static_cast<double>(x.size());
  const double mean_x = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double mean_y = std::accumulate(y.begin(), y.end(), 0.0) / n;

  double cov = 0, var_x = 0, var_y = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mean_x;
    const double dy = y[i] - mean_y;
    cov += dx * dy;
    var_x += dx * dx;
    var_y += dy * dy;
  }
  if (var_x == 0.0 || var_y == 0.0)
    throw DegenerateVarianceError("pearson: zero variance in an argument");
  return cov / std::sqrt(var_x * var_y);
}

std::vector<double> average_ranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

  std::vector<double> ranks(n, 0.0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    // tied block occupies ranks i+1 .. j+1; everyone gets the mean
    const double rank = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

double spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw MetricError("spearman: length mismatch");
  if (x.size() < 2) throw MetricError("spearman: need at least 2 points");
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  try {
    return pearson(rx, ry);
  } catch (const DegenerateVarianceError&) {
    throw DegenerateVarianceError("spearman: an argument is fully tied");
  }
}

NerScheme ner_scheme_from_string(const std::string& name) {
  if (name == "strict") return NerScheme::strict;
  if (name == "partial") return NerScheme::partial;
  if (name == "type") return NerScheme::type;
  throw MetricError("unknown ner scheme: " + name);
}

double NerCounts::precision() const {
  const double denom = correct + incorrect + partial + spurious;
  return denom > 0 ? (correct + 0.5 * partial) / denom : 0.0;
}

double NerCounts::recall() const {
  const double denom = correct + incorrect + partial + missed;
  return denom > 0 ? (correct + 0.5 * partial) / denom : 0.0;
}

double NerCounts::f1() const {
  const double p = precision();
  const double r = recall();
  return p + r > 0 ? 2.0 * p * r / (p + r) : 0.0;
}

namespace {

int overlap_length(const EntitySpan& a, const EntitySpan& b) {
  return std::max(0, std::min(a.end, b.end) - std::max(a.start, b.start));
}

struct Candidate {
  std::size_t gold_idx;
  std::size_t pred_idx;
  bool exact;  // identical boundaries and type
  int overlap;
  int gold_start;
  int pred_start;
};

// One-to-one matching shared by all schemes: exact boundary+type pairs win,
// then larger overlap, then earlier gold span, then earlier predicted span.
std::vector<std::pair<std::size_t, std::size_t>> match_spans(
    const std::vector<EntitySpan>& gold, const std::vector<EntitySpan>& pred) {
  std::vector<Candidate> candidates;
  for (std::size_t g = 0; g < gold.size(); ++g) {
    for (std::size_t p = 0; p < pred.size(); ++p) {
      const int ov = overlap_length(gold[g], pred[p]);
      if (ov <= 0) continue;
      const bool exact = gold[g].start == pred[p].start && gold[g].end == pred[p].end &&
                         gold[g].entity_type == pred[p].entity_type;
      candidates.push_back({g, p, exact, ov, gold[g].start, pred[p].start});
    }
  }
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    if (a.exact != b.exact) return a.exact;
    if (a.overlap != b.overlap) return a.overlap > b.overlap;
    if (a.gold_start != b.gold_start) return a.gold_start < b.gold_start;
    if (a.pred_start != b.pred_start) return a.pred_start < b.pred_start;
    if (a.gold_idx != b.gold_idx) return a.gold_idx < b.gold_idx;
    return a.pred_idx < b.pred_idx;
  });

  std::vector<bool> gold_used(gold.size(), false), pred_used(pred.size(), false);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (const auto& c : candidates) {
    if (gold_used[c.gold_idx] || pred_used[c.pred_idx]) continue;
    gold_used[c.gold_idx] = true;
    pred_used[c.pred_idx] = true;
    pairs.emplace_back(c.gold_idx, c.pred_idx);
  }
  return pairs;
}

}  // namespace

NerCounts ner_count(std::span<const std::vector<EntitySpan>> gold,
                    std::span<const std::vector<EntitySpan>> pred, NerScheme scheme) {
  if (gold.size() != pred.size()) throw MetricError("ner_evaluate: corpus length mismatch");

  NerCounts counts;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    const auto& g = gold[i];
    const auto& p = pred[i];
    const auto pairs = match_spans(g, p);
    for (const auto& [gi, pi] : pairs) {
      const bool boundary = g[gi].start == p[pi].start && g[gi].end == p[pi].end;
      const bool type = g[gi].entity_type == p[pi].entity_type;
      switch (scheme) {
        case NerScheme::strict:
          boundary && type ? ++counts.correct : ++counts.incorrect;
          break;
        case NerScheme::partial:
          boundary ? ++counts.correct : ++counts.partial;
          break;
        case NerScheme::type:
          type ? ++counts.correct : ++counts.incorrect;
          break;
      }
    }
    counts.spurious += static_cast<double>(p.size() - pairs.size());
    counts.missed += static_cast<double>(g.size() - pairs.size());
  }
  return counts;
}

double ner_evaluate(std::span<const std::vector<EntitySpan>> gold,
                    std::span<const std::vector<EntitySpan>> pred, NerScheme scheme) {
  return ner_count(gold, pred, scheme).f1();
}

SimilarityVectors similarity_vectors(const std::vector<SimilarityExample>& gold,
                                     const std::vector<Prediction>& predictions) {
  if (gold.size() != predictions.size())
    throw MetricError("similarity_vectors: gold/prediction length mismatch");
  SimilarityVectors out;
  out.gold.reserve(gold.size());
  for (const auto& ex : gold) out.gold.push_back(ex.score);

  const double mean = gold.empty()
                          ? 0.0
                          : std::accumulate(out.gold.begin(), out.gold.end(), 0.0) /
                                static_cast<double>(out.gold.size());
  std::size_t errors = 0;
  out.pred.reserve(predictions.size());
  for (const auto& p : predictions) {
    if (p.parse_error || !p.has_score()) {
      out.pred.push_back(mean);
      ++errors;
    } else {
      out.pred.push_back(p.score());
    }
  }
  out.parse_error_rate = predictions.empty()
                             ? 0.0
                             : static_cast<double>(errors) / static_cast<double>(predictions.size());
  return out;
}

namespace {

struct IntentVectors {
  std::vector<std::string> gold;
  std::vector<std::string> pred;
  double parse_error_rate = 0;
};

IntentVectors intent_vectors(const Dataset& dataset, const std::vector<Prediction>& predictions) {
  const auto& xs = dataset.intents();
  if (xs.size() != predictions.size())
    throw MetricError("intent scoring: gold/prediction length mismatch");
  IntentVectors out;
  std::size_t errors = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    out.gold.push_back(xs[i].label);
    if (predictions[i].parse_error || !predictions[i].has_label()) {
      out.pred.push_back(kInvalidLabel);
      ++errors;
    } else {
      out.pred.push_back(predictions[i].label());
    }
  }
  out.parse_error_rate =
      xs.empty() ? 0.0 : static_cast<double>(errors) / static_cast<double>(xs.size());
  return out;
}

struct NerVectors {
  std::vector<std::vector<EntitySpan>> gold;
  std::vector<std::vector<EntitySpan>> pred;
  double parse_error_rate = 0;
};

NerVectors ner_vectors(const Dataset& dataset, const std::vector<Prediction>& predictions) {
  const auto& xs = dataset.sentences();
  if (xs.size() != predictions.size())
    throw MetricError("ner scoring: gold/prediction length mismatch");
  NerVectors out;
  std::size_t errors = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    out.gold.push_back(xs[i].spans);
    if (predictions[i].parse_error || !predictions[i].has_spans()) {
      out.pred.emplace_back();  // maximally wrong: no predicted entities
      ++errors;
    } else {
      out.pred.push_back(predictions[i].spans());
    }
  }
  out.parse_error_rate =
      xs.empty() ? 0.0 : static_cast<double>(errors) / static_cast<double>(xs.size());
  return out;
}

}  // namespace

MetricOutcome evaluate_metric(const Dataset& gold, const std::vector<Prediction>& predictions,
                              const std::string& metric_id) {
  MetricOutcome out;
  if (metric_id == kMacroPrecision || metric_id == kMacroRecall || metric_id == kMacroF1) {
    auto v = intent_vectors(gold, predictions);
    const Prf prf = macro_prf(v.gold, v.pred, gold.label_inventory);
    out.parse_error_rate = v.parse_error_rate;
    out.value = metric_id == kMacroPrecision ? prf.precision
                : metric_id == kMacroRecall  ? prf.recall
                                             : prf.f1;
  } else if (metric_id == kPearson || metric_id == kSpearman) {
    auto v = similarity_vectors(gold.pairs(), predictions);
    out.parse_error_rate = v.parse_error_rate;
    out.value = metric_id == kPearson ? pearson(v.gold, v.pred) : spearman(v.gold, v.pred);
  } else if (metric_id == kNerStrictF1 || metric_id == kNerPartialF1 || metric_id == kNerTypeF1) {
    auto v = ner_vectors(gold, predictions);
    out.parse_error_rate = v.parse_error_rate;
    const NerScheme scheme = metric_id == kNerStrictF1    ? NerScheme::strict
                             : metric_id == kNerPartialF1 ? NerScheme::partial
                                                          : NerScheme::type;
    out.value = ner_evaluate(v.gold, v.pred, scheme);
  } else {
    throw MetricError("unknown metric id: " + metric_id);
  }
  return out;
}

std::vector<std::string> default_metrics(TaskKind task) {
  switch (task) {
    case TaskKind::intent_detection: return {kMacroPrecision, kMacroRecall, kMacroF1};
    case TaskKind::text_similarity: return {kPearson, kSpearman};
    case TaskKind::ner: return {kNerStrictF1, kNerPartialF1, kNerTypeF1};
  }
  return {};
}

std::string bias_metric(TaskKind task) {
  switch (task) {
    case TaskKind::intent_detection: return kMacroF1;
    case TaskKind::text_similarity: return kPearson;
    case TaskKind::ner: return kNerStrictF1;
  }
  return kMacroF1;
}

}  // namespace synthbench::metrics
