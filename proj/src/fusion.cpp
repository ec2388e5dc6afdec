#include "ensemble_forge/fusion.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "ensemble_forge/error.hpp"

namespace ensemble_forge {

WeightVector::WeightVector(std::vector<double> weights) : weights_(std::move(weights)) {
  if (weights_.empty()) throw Error(ErrorKind::DegenerateWeights, "weight vector is empty");
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    const double w = weights_[i];
    if (!std::isfinite(w) || w < 0.0 || w > 1.0) {
      throw Error(ErrorKind::InvalidWeight, "gene " + std::to_string(i) + " = " + std::to_string(w) +
                                                " is outside [0, 1]");
    }
  }
  if (!(sum() > 0.0)) throw Error(ErrorKind::DegenerateWeights, "all genes are zero");
}

WeightVector WeightVector::unit(std::size_t n, std::size_t index) {
  std::vector<double> genes(n, 0.0);
  genes.at(index) = 1.0;
  return WeightVector(std::move(genes));
}

WeightVector WeightVector::uniform(std::size_t n, double gene) {
  return WeightVector(std::vector<double>(n, gene));
}

double WeightVector::sum() const noexcept {
  return std::accumulate(weights_.begin(), weights_.end(), 0.0);
}

std::vector<double> WeightVector::normalized() const {
  const double total = sum();
  std::vector<double> out(weights_.size());
  for (std::size_t i = 0; i < weights_.size(); ++i) out[i] = weights_[i] / total;
  return out;
}

std::size_t argmax(std::span<const double> row) {
  std::size_t best = 0;
  for (std::size_t c = 1; c < row.size(); ++c) {
    if (row[c] > row[best]) best = c;
  }
  return best;
}

FusedPrediction fuse(const EnsembleInput& input, const WeightVector& w) {
  if (w.size() != input.num_members()) {
    throw Error(ErrorKind::LengthMismatch, std::to_string(w.size()) + " weights for " +
                                               std::to_string(input.num_members()) + " classifiers");
  }
  const double total = w.sum();
  if (!(total > 0.0)) throw Error(ErrorKind::DegenerateWeights, "weights sum to zero");

  // Normalizing first makes proportional weight vectors fuse bit-identically
  // whenever their normalized forms agree.
  const std::vector<double> share = w.normalized();
  const std::size_t samples = input.num_samples();
  const std::size_t classes = input.num_classes();

  FusedPrediction out{Matrix(samples, classes, 0.0), std::vector<std::size_t>(samples, 0)};
  for (std::size_t i = 0; i < input.num_members(); ++i) {
    if (share[i] == 0.0) continue;
    const Matrix& v = input.member(i).probs();
    for (std::size_t s = 0; s < samples; ++s) {
      auto dst = out.probs.row(s);
      const auto src = v.row(s);
      for (std::size_t c = 0; c < classes; ++c) dst[c] += share[i] * src[c];
    }
  }
  for (std::size_t s = 0; s < samples; ++s) out.decisions[s] = argmax(out.probs.row(s));
  return out;
}

double mse(const Matrix& probs, const LabelVector& labels) {
  if (probs.rows() != labels.size()) {
    throw Error(ErrorKind::LengthMismatch, std::to_string(probs.rows()) + " predictions for " +
                                               std::to_string(labels.size()) + " labels");
  }
  const std::size_t classes = probs.cols();
  double total = 0.0;
  for (std::size_t s = 0; s < probs.rows(); ++s) {
    const std::size_t truth = labels[s];
    if (truth >= classes) {
      throw Error(ErrorKind::LabelOutOfRange, "label " + std::to_string(truth) + " with " +
                                                  std::to_string(classes) + " classes");
    }
    const auto row = probs.row(s);
    for (std::size_t c = 0; c < classes; ++c) {
      const double diff = row[c] - (c == truth ? 1.0 : 0.0);
      total += diff * diff;
    }
  }
  return total / static_cast<double>(probs.rows() * classes);
}

double mse(const FusedPrediction& fused, const LabelVector& labels) {
  return mse(fused.probs, labels);
}

EvaluationReport evaluate(const FusedPrediction& fused, const LabelVector& labels) {
  const std::size_t samples = fused.decisions.size();
  const std::size_t classes = fused.probs.cols();
  if (samples != labels.size() || fused.probs.rows() != samples) {
    throw Error(ErrorKind::LengthMismatch, std::to_string(samples) + " predictions for " +
                                               std::to_string(labels.size()) + " labels");
  }

  EvaluationReport report;
  report.num_samples = samples;
  report.confusion.assign(classes, std::vector<std::size_t>(classes, 0));
  report.support.assign(classes, 0);
  for (std::size_t s = 0; s < samples; ++s) {
    const std::size_t truth = labels[s];
    const std::size_t predicted = fused.decisions[s];
    if (truth >= classes || predicted >= classes) {
      throw Error(ErrorKind::LabelOutOfRange, "sample " + std::to_string(s) + " outside " +
                                                  std::to_string(classes) + " classes");
    }
    ++report.confusion[truth][predicted];
    ++report.support[truth];
  }

  std::size_t correct = 0;
  report.per_class_recall.assign(classes, 0.0);
  report.zero_support.assign(classes, false);
  for (std::size_t c = 0; c < classes; ++c) {
    correct += report.confusion[c][c];
    if (report.support[c] == 0) {
      report.zero_support[c] = true;
    } else {
      report.per_class_recall[c] =
          static_cast<double>(report.confusion[c][c]) / static_cast<double>(report.support[c]);
    }
  }
  report.accuracy = samples == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(samples);
  report.mse = mse(fused.probs, labels);
  return report;
}

FusedPrediction as_prediction(const PredictionMatrix& member) {
  FusedPrediction out{member.probs(), std::vector<std::size_t>(member.num_samples())};
  for (std::size_t s = 0; s < member.num_samples(); ++s) out.decisions[s] = argmax(out.probs.row(s));
  return out;
}

}  // namespace ensemble_forge
