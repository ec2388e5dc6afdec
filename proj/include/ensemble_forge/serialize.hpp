#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "ensemble_forge/fusion.hpp"
#include "ensemble_forge/ga.hpp"

namespace ensemble_forge {

nlohmann::json to_json(const EvaluationReport& report, const std::vector<std::string>& class_names);
nlohmann::json to_json(const GAConfig& config);
nlohmann::json to_json(const GAResult& result, const std::vector<std::string>& classifier_ids);

/// `true_class,<class names...>` header, one row per true class.
std::string confusion_csv(const EvaluationReport& report, const std::vector<std::string>& class_names);

/// `generation,best_mse,mean_mse`, one row per history entry.
std::string history_csv(const GAResult& result);

/// Raw genes, their normalized form (sum 1) and the ids they belong to.
nlohmann::json weights_json(const WeightVector& weights, const std::vector<std::string>& classifier_ids,
                            double fit_mse, const GAConfig& config);

struct WeightsFile {
  std::vector<double> genes;
  std::vector<std::string> classifier_ids;  // empty when the file carries none
};

/// Accepts the weights_json() layout or a bare JSON array of genes.
WeightsFile read_weights_file(const std::filesystem::path& path);

struct ComparisonRow {
  std::string split;
  std::string id;
  std::string kind;  // member | uniform | ga
  double accuracy = 0.0;
  double mse = 0.0;
};

/// `split,id,kind,accuracy,mse`.
std::string comparison_csv(const std::vector<ComparisonRow>& rows);
nlohmann::json to_json(const std::vector<ComparisonRow>& rows);

}  // namespace ensemble_forge
