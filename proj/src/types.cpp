#include "ensemble_forge/types.hpp"

#include <cmath>
#include <set>

#include "ensemble_forge/error.hpp"

namespace ensemble_forge {

PredictionMatrix validate_prediction_matrix(const std::vector<std::vector<double>>& raw,
                                            std::string id) {
  if (raw.empty()) throw Error(ErrorKind::EmptyMatrix, "classifier '" + id + "' has no samples");
  const std::size_t cols = raw.front().size();
  Matrix m(raw.size(), cols);
  for (std::size_t r = 0; r < raw.size(); ++r) {
    if (raw[r].size() != cols) {
      throw Error(ErrorKind::NonRectangular, "classifier '" + id + "' row " + std::to_string(r) +
                                                 " has " + std::to_string(raw[r].size()) +
                                                 " entries, expected " + std::to_string(cols));
    }
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = raw[r][c];
  }
  return validate_prediction_matrix(std::move(m), std::move(id));
}

PredictionMatrix validate_prediction_matrix(Matrix raw, std::string id) {
  if (raw.rows() == 0 || raw.cols() < 2) {
    throw Error(ErrorKind::EmptyMatrix, "classifier '" + id + "' needs >= 1 sample and >= 2 classes");
  }
  for (std::size_t r = 0; r < raw.rows(); ++r) {
    auto row = raw.row(r);
    double sum = 0.0;
    for (std::size_t c = 0; c < row.size(); ++c) {
      const double p = row[c];
      if (!std::isfinite(p)) {
        throw Error(ErrorKind::NonFiniteValue, "classifier '" + id + "' row " + std::to_string(r) +
                                                   " column " + std::to_string(c));
      }
      if (p < 0.0) {
        throw Error(ErrorKind::NegativeProbability,
                    "classifier '" + id + "' row " + std::to_string(r) + " column " +
                        std::to_string(c) + " is " + std::to_string(p));
      }
      sum += p;
    }
    const double drift = std::abs(sum - 1.0);
    if (drift > kRowSumRenormLimit) {
      throw Error(ErrorKind::RowSumOutOfTolerance,
                  "classifier '" + id + "' row " + std::to_string(r) + " sums to " + std::to_string(sum));
    }
    if (drift > 0.0) {
      for (double& p : row) p /= sum;
    }
  }
  return PredictionMatrix(std::move(id), std::move(raw));
}

LabelVector::LabelVector(std::vector<std::size_t> labels,
                         std::optional<std::vector<std::string>> class_names)
    : labels_(std::move(labels)), class_names_(std::move(class_names)) {
  if (class_names_) {
    for (std::size_t label : labels_) {
      if (label >= class_names_->size()) {
        throw Error(ErrorKind::LabelOutOfRange,
                    "label " + std::to_string(label) + " with " +
                        std::to_string(class_names_->size()) + " class names");
      }
    }
  }
}

EnsembleInput EnsembleInput::make(std::vector<PredictionMatrix> members, LabelVector labels) {
  if (members.empty()) throw Error(ErrorKind::EmptyMatrix, "ensemble has no members");
  const std::size_t samples = members.front().num_samples();
  const std::size_t classes = members.front().num_classes();
  std::set<std::string> ids;
  for (const auto& m : members) {
    if (m.num_samples() != samples || m.num_classes() != classes) {
      throw Error(ErrorKind::ShapeMismatch,
                  "classifier '" + m.classifier_id() + "' is " + std::to_string(m.num_samples()) +
                      "x" + std::to_string(m.num_classes()) + ", expected " + std::to_string(samples) +
                      "x" + std::to_string(classes));
    }
    if (!ids.insert(m.classifier_id()).second) {
      throw Error(ErrorKind::DuplicateId, "classifier id '" + m.classifier_id() + "' repeats");
    }
  }
  if (labels.size() != samples) {
    throw Error(ErrorKind::ShapeMismatch, "labels have " + std::to_string(labels.size()) +
                                              " entries, predictions have " + std::to_string(samples));
  }
  if (labels.class_names() && labels.class_names()->size() != classes) {
    throw Error(ErrorKind::ShapeMismatch, std::to_string(labels.class_names()->size()) +
                                              " class names for " + std::to_string(classes) + " classes");
  }
  for (std::size_t s = 0; s < labels.size(); ++s) {
    if (labels[s] >= classes) {
      throw Error(ErrorKind::LabelOutOfRange, "sample " + std::to_string(s) + " has label " +
                                                  std::to_string(labels[s]) + " with " +
                                                  std::to_string(classes) + " classes");
    }
  }
  return EnsembleInput(std::move(members), std::move(labels));
}

std::vector<std::string> EnsembleInput::class_names() const {
  if (labels_.class_names()) return *labels_.class_names();
  return default_class_names(num_classes());
}

std::vector<std::string> EnsembleInput::member_ids() const {
  std::vector<std::string> ids;
  ids.reserve(members_.size());
  for (const auto& m : members_) ids.push_back(m.classifier_id());
  return ids;
}

std::vector<std::string> default_class_names(std::size_t num_classes) {
  std::vector<std::string> names;
  names.reserve(num_classes);
  for (std::size_t c = 0; c < num_classes; ++c) names.push_back("class_" + std::to_string(c));
  return names;
}

}  // namespace ensemble_forge
