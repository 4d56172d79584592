#pragma once

#include "synthbench/core.hpp"

#include <span>
#include <string>
#include <vector>

namespace synthbench::meta {

// Mean squared difference between approach-aligned metric vectors measured on
// the real dataset and on one synthetic dataset.
double mspd(std::span<const double> real_values, std::span<const double> synth_values);

// Spearman rank correlation between the approach rankings induced by the real
// and synthetic datasets.
double ranking_srcc(std::span<const double> real_values, std::span<const double> synth_values);

struct EfficacyRow {
  std::string generator_id;  // generating model, or "Average"
  std::string metric_id;
  double mspd = 0;
  double srcc = 0;
};

// Arithmetic mean of mspd and srcc across the rows carrying metric_id.
EfficacyRow generator_average(std::span<const EfficacyRow> rows, const std::string& metric_id);

// Dense solver-by-generator view used by the bias computation:
// values[i][j] = performance of solver i on the dataset generated by solver j.
using SquareMatrix = std::vector<std::vector<double>>;

enum class NormalizeMode { none, minmax };

// Column-centered performance: values[solver][generator] minus the mean of
// column `generator` over all solvers.
double normalized_performance(const SquareMatrix& values, std::size_t solver,
                              std::size_t generator);

// Bias factor of solver k: its column-centered performance on its own dataset
// minus the mean of its column-centered performance on the other generators'
// datasets. Positive means the solver favors its own synthetic data.
double bias_factor(const SquareMatrix& values, std::size_t k,
                   NormalizeMode mode = NormalizeMode::none);

// Min-max rescaling of every cell to [0,1]. Throws DegenerateVarianceError
// when all cells are equal.
SquareMatrix minmax_scale(const SquareMatrix& values);

struct BiasRow {
  std::string model_id;
  std::vector<std::string> dataset_ids;
  std::vector<double> factors;
  double average() const;
};

// Pulls the solver-by-generator square matrix out of a PerformanceMatrix.
// dataset_of[j] names the matrix column holding solver j's generated dataset.
// Throws listing missing cells; meta metrics refuse incomplete matrices.
SquareMatrix extract_square(const PerformanceMatrix& matrix,
                            std::span<const std::string> roster,
                            std::span<const std::string> dataset_of);

// Consistency checking of externally declared row averages (e.g. published
// tables) against the arithmetic mean of the row.
struct DeclaredRow {
  std::string model_id;
  std::vector<double> values;
  double declared_average = 0;
};

struct AverageCheck {
  std::string model_id;
  double computed = 0;
  double declared = 0;
  bool consistent = true;
};

std::vector<AverageCheck> check_declared_averages(std::span<const DeclaredRow> rows,
                                                  double tolerance = 1e-3);

}  // namespace synthbench::meta
