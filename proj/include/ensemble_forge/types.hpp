#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ensemble_forge/matrix.hpp"

namespace ensemble_forge {

/// Rows whose sum is within this of 1 are accepted as-is by the invariant.
inline constexpr double kRowSumTolerance = 1e-6;
/// Rows drifting further than this from 1 are rejected instead of renormalized.
inline constexpr double kRowSumRenormLimit = 1e-3;

/// One classifier's softmax outputs: samples x classes, every row a distribution.
///
/// Only obtainable through validate_prediction_matrix(), so every instance
/// satisfies the row-stochastic invariant.
class PredictionMatrix {
 public:
  const std::string& classifier_id() const noexcept { return id_; }
  std::size_t num_samples() const noexcept { return probs_.rows(); }
  std::size_t num_classes() const noexcept { return probs_.cols(); }
  const Matrix& probs() const noexcept { return probs_; }

  bool operator==(const PredictionMatrix&) const = default;

 private:
  friend PredictionMatrix validate_prediction_matrix(const std::vector<std::vector<double>>&,
                                                     std::string);
  friend PredictionMatrix validate_prediction_matrix(Matrix, std::string);
  PredictionMatrix(std::string id, Matrix probs) : id_(std::move(id)), probs_(std::move(probs)) {}

  std::string id_;
  Matrix probs_;
};

/// Checks and normalizes raw classifier output.
///
/// Rows with a nonzero drift from 1 of at most kRowSumRenormLimit are divided
/// by their sum; negative, non-finite entries and larger drift are errors.
PredictionMatrix validate_prediction_matrix(const std::vector<std::vector<double>>& raw,
                                            std::string id);
PredictionMatrix validate_prediction_matrix(Matrix raw, std::string id);

/// Ground-truth class index per sample.
class LabelVector {
 public:
  LabelVector() = default;
  explicit LabelVector(std::vector<std::size_t> labels,
                       std::optional<std::vector<std::string>> class_names = std::nullopt);

  std::size_t size() const noexcept { return labels_.size(); }
  std::size_t operator[](std::size_t s) const { return labels_[s]; }
  const std::vector<std::size_t>& labels() const noexcept { return labels_; }
  const std::optional<std::vector<std::string>>& class_names() const noexcept {
    return class_names_;
  }

  bool operator==(const LabelVector&) const = default;

 private:
  std::vector<std::size_t> labels_;
  std::optional<std::vector<std::string>> class_names_;
};

/// Ordered classifier outputs over a shared sample set, plus the labels.
class EnsembleInput {
 public:
  /// Throws ShapeMismatch, DuplicateId, LabelOutOfRange or EmptyMatrix.
  static EnsembleInput make(std::vector<PredictionMatrix> members, LabelVector labels);

  std::size_t num_members() const noexcept { return members_.size(); }
  std::size_t num_samples() const noexcept { return members_.front().num_samples(); }
  std::size_t num_classes() const noexcept { return members_.front().num_classes(); }

  const std::vector<PredictionMatrix>& members() const noexcept { return members_; }
  const PredictionMatrix& member(std::size_t i) const { return members_[i]; }
  const LabelVector& labels() const noexcept { return labels_; }

  /// Class names from the labels, or class_0..class_{C-1}.
  std::vector<std::string> class_names() const;
  std::vector<std::string> member_ids() const;

  bool operator==(const EnsembleInput&) const = default;

 private:
  EnsembleInput(std::vector<PredictionMatrix> members, LabelVector labels)
      : members_(std::move(members)), labels_(std::move(labels)) {}

  std::vector<PredictionMatrix> members_;
  LabelVector labels_;
};

std::vector<std::string> default_class_names(std::size_t num_classes);

}  // namespace ensemble_forge
