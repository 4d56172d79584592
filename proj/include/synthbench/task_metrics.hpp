#pragma once

#include "synthbench/core.hpp"

#include <span>
#include <string>
#include <vector>

namespace synthbench::metrics {

inline constexpr const char* kMacroPrecision = "macro_precision";
inline constexpr const char* kMacroRecall = "macro_recall";
inline constexpr const char* kMacroF1 = "macro_f1";
inline constexpr const char* kPearson = "pearson";
inline constexpr const char* kSpearman = "spearman";
inline constexpr const char* kNerStrictF1 = "ner_strict_f1";
inline constexpr const char* kNerPartialF1 = "ner_partial_f1";
inline constexpr const char* kNerTypeF1 = "ner_type_f1";

// Label substituted for predictions that failed to parse; never part of an
// inventory, so it scores as fully incorrect.
inline constexpr const char* kInvalidLabel = "<parse-error>";

struct Prf {
  double precision = 0;
  double recall = 0;
  double f1 = 0;
};

// Unweighted mean of per-class precision/recall/F1 over the inventory classes.
// Classes with a zero denominator contribute 0.
Prf macro_prf(std::span<const std::string> gold, std::span<const std::string> pred,
              std::span<const std::string> inventory);

// Sample Pearson correlation. Throws DegenerateVarianceError when either
// argument has zero variance.
double pearson(std::span<const double> x, std::span<const double> y);

// Spearman rank correlation with average ranks for ties.
double spearman(std::span<const double> x, std::span<const double> y);

// 1-based average ranks (ties get the mean of the ranks they span).
std::vector<double> average_ranks(std::span<const double> values);

enum class NerScheme { strict, partial, type };
NerScheme ner_scheme_from_string(const std::string& name);

// SemEval-2013 style counts accumulated over a corpus.
struct NerCounts {
  double correct = 0;
  double incorrect = 0;
  double partial = 0;
  double spurious = 0;
  double missed = 0;

  double precision() const;
  double recall() const;
  double f1() const;
};

// Corpus-level (micro) F1 for one scheme. Matching is one-to-one and shared
// by all schemes: exact boundary+type pairs first, then larger overlap, then
// earlier gold span.
double ner_evaluate(std::span<const std::vector<EntitySpan>> gold,
                    std::span<const std::vector<EntitySpan>> pred, NerScheme scheme);
NerCounts ner_count(std::span<const std::vector<EntitySpan>> gold,
                    std::span<const std::vector<EntitySpan>> pred, NerScheme scheme);

struct SimilarityVectors {
  std::vector<double> gold;
  std::vector<double> pred;
  double parse_error_rate = 0;
};

// Builds aligned gold/pred score vectors for correlation. Errored predictions
// are assigned the corpus gold mean so they cannot add spurious correlation;
// the error rate is reported alongside.
SimilarityVectors similarity_vectors(const std::vector<SimilarityExample>& gold,
                                     const std::vector<Prediction>& predictions);

struct MetricOutcome {
  double value = 0;
  double parse_error_rate = 0;
};

// Scores one prediction set against its gold dataset under the named metric.
// Predictions must be index-aligned with the dataset examples.
MetricOutcome evaluate_metric(const Dataset& gold, const std::vector<Prediction>& predictions,
                              const std::string& metric_id);

// Metric ids appropriate for a task, in report order.
std::vector<std::string> default_metrics(TaskKind task);

// The single metric feeding the bias-factor matrix for a task.
std::string bias_metric(TaskKind task);

}  // namespace synthbench::metrics
