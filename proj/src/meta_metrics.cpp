#include "synthbench/meta_metrics.hpp"

#include "synthbench/errors.hpp"
#include "synthbench/task_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace synthbench::meta {

double mspd(std::span<const double> real_values, std::span<const double> synth_values) {
  if (real_values.size() != synth_values.size())
    throw MetricError("mspd: vector length mismatch (" + std::to_string(real_values.size()) +
                      " vs " + std::to_string(synth_values.size()) + ")");
  if (real_values.empty()) throw MetricError("mspd: empty vectors");
  double sum = 0;
  for (std::size_t i = 0; i < real_values.size(); ++i) {
    const double d = real_values[i] - synth_values[i];
    sum += d * d;
  }
  return sum / static_cast<double>(real_values.size());
}

double ranking_srcc(std::span<const double> real_values, std::span<const double> synth_values) {
  return metrics::spearman(real_values, synth_values);
}

EfficacyRow generator_average(std::span<const EfficacyRow> rows, const std::string& metric_id) {
  EfficacyRow avg;
  avg.generator_id = "Average";
  avg.metric_id = metric_id;
  std::size_t n = 0;
  for (const auto& row : rows) {
    if (row.metric_id != metric_id) continue;
    avg.mspd += row.mspd;
    avg.srcc += row.srcc;
    ++n;
  }
  if (n == 0) throw MetricError("generator_average: no rows for metric " + metric_id);
  avg.mspd /= static_cast<double>(n);
  avg.srcc /= static_cast<double>(n);
  return avg;
}

namespace {

void check_square(const SquareMatrix& values) {
  if (values.empty()) throw MetricError("bias matrix is empty");
  for (const auto& row : values)
    if (row.size() != values.size())
      throw MetricError("bias matrix is not square");
}

double column_mean(const SquareMatrix& values, std::size_t column) {
  double sum = 0;
  for (const auto& row : values) sum += row[column];
  return sum / static_cast<double>(values.size());
}

}  // namespace

double normalized_performance(const SquareMatrix& values, std::size_t solver,
                              std::size_t generator) {
  check_square(values);
  if (solver >= values.size() || generator >= values.size())
    throw MetricError("normalized_performance: index out of range");
  return values[solver][generator] - column_mean(values, generator);
}

SquareMatrix minmax_scale(const SquareMatrix& values) {
  check_square(values);
  double lo = values[0][0], hi = values[0][0];
  for (const auto& row : values)
    for (double v : row) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  if (lo == hi)
    throw DegenerateVarianceError("minmax_scale: constant matrix cannot be normalized");
  SquareMatrix scaled = values;
  for (auto& row : scaled)
    for (double& v : row) v = (v - lo) / (hi - lo);
  return scaled;
}

double bias_factor(const SquareMatrix& values, std::size_t k, NormalizeMode mode) {
  check_square(values);
  const std::size_t n = values.size();
  if (n < 2) throw MetricError("bias_factor: need at least 2 models in the roster");
  if (k >= n) throw MetricError("bias_factor: solver index out of range");

  const SquareMatrix scaled = mode == NormalizeMode::minmax ? minmax_scale(values) : SquareMatrix{};
  const SquareMatrix& src = mode == NormalizeMode::minmax ? scaled : values;

  const double own = normalized_performance(src, k, k);
  double others = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (j == k) continue;
    others += normalized_performance(src, k, j);
  }
  others /= static_cast<double>(n - 1);
  return own - others;
}

double BiasRow::average() const {
  if (factors.empty()) return 0;
  return std::accumulate(factors.begin(), factors.end(), 0.0) /
         static_cast<double>(factors.size());
}

SquareMatrix extract_square(const PerformanceMatrix& matrix,
                            std::span<const std::string> roster,
                            std::span<const std::string> dataset_of) {
  if (roster.size() != dataset_of.size())
    throw MetricError("extract_square: roster/dataset list size mismatch");
  std::vector<std::string> missing;
  SquareMatrix values(roster.size(), std::vector<double>(roster.size(), 0.0));
  for (std::size_t i = 0; i < roster.size(); ++i) {
    auto si = matrix.solver_index(roster[i]);
    for (std::size_t j = 0; j < roster.size(); ++j) {
      auto dj = matrix.dataset_index(dataset_of[j]);
      if (!si || !dj || !matrix.cell(*si, *dj).value) {
        missing.push_back(roster[i] + " x " + dataset_of[j]);
        continue;
      }
      values[i][j] = *matrix.cell(*si, *dj).value;
    }
  }
  if (!missing.empty()) {
    std::string msg = "incomplete matrix for bias computation; missing cells:";
    for (const auto& cell : missing) msg += " [" + cell + "]";
    throw MetricError(msg);
  }
  return values;
}

std::vector<AverageCheck> check_declared_averages(std::span<const DeclaredRow> rows,
                                                  double tolerance) {
  std::vector<AverageCheck> out;
  for (const auto& row : rows) {
    if (row.values.empty()) throw MetricError("check_declared_averages: empty row");
    AverageCheck check;
    check.model_id = row.model_id;
    check.declared = row.declared_average;
    check.computed = std::accumulate(row.values.begin(), row.values.end(), 0.0) /
                     static_cast<double>(row.values.size());
    check.consistent = std::abs(check.computed - check.declared) <= tolerance;
    out.push_back(check);
  }
  return out;
}

}  // namespace synthbench::meta
