#pragma once

#include <cstddef>
#include <vector>

#include "ensemble_forge/matrix.hpp"
#include "ensemble_forge/types.hpp"

namespace ensemble_forge {

/// Soft-voting weights, one gene per classifier, each in [0, 1] with a positive sum.
class WeightVector {
 public:
  /// Throws InvalidWeight (gene outside [0,1] or non-finite) or DegenerateWeights (all zero).
  explicit WeightVector(std::vector<double> weights);

  static WeightVector unit(std::size_t n, std::size_t index);
  static WeightVector uniform(std::size_t n, double gene = 0.5);

  std::size_t size() const noexcept { return weights_.size(); }
  double operator[](std::size_t i) const { return weights_[i]; }
  const std::vector<double>& genes() const noexcept { return weights_; }
  double sum() const noexcept;

  /// Weights rescaled to sum to 1.
  std::vector<double> normalized() const;

  bool operator==(const WeightVector&) const = default;

 private:
  std::vector<double> weights_;
};

struct FusedPrediction {
  Matrix probs;
  std::vector<std::size_t> decisions;
};

struct EvaluationReport {
  std::size_t num_samples = 0;
  double accuracy = 0.0;
  std::vector<double> per_class_recall;
  /// True where support is zero; recall is reported as 0 there.
  std::vector<bool> zero_support;
  /// Rows are true classes, columns predicted classes.
  std::vector<std::vector<std::size_t>> confusion;
  double mse = 0.0;
  std::vector<std::size_t> support;
};

/// Lowest index among the maximal entries.
std::size_t argmax(std::span<const double> row);

/// V_final = sum_i w_i V_i / sum_i w_i, then argmax decisions.
FusedPrediction fuse(const EnsembleInput& input, const WeightVector& w);

/// Mean over all S*C cells of the squared error against one-hot targets.
double mse(const Matrix& probs, const LabelVector& labels);
double mse(const FusedPrediction& fused, const LabelVector& labels);

EvaluationReport evaluate(const FusedPrediction& fused, const LabelVector& labels);

/// Scores a single member as if it were the whole ensemble.
FusedPrediction as_prediction(const PredictionMatrix& member);

}  // namespace ensemble_forge
