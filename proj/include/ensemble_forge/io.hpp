#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "ensemble_forge/types.hpp"

namespace ensemble_forge {

/// Shortest decimal text that parses back to exactly `value`.
std::string format_double(double value);

struct PredictionCsv {
  std::vector<std::string> header;
  PredictionMatrix matrix;
};

/// Header line of class names, then one row of C probabilities per sample.
PredictionCsv read_prediction_csv(const std::filesystem::path& path, std::string classifier_id);
/// Header `label`, then one non-negative integer per line.
std::vector<std::size_t> read_label_csv(const std::filesystem::path& path);

void write_prediction_csv(const std::filesystem::path& path, const PredictionMatrix& m,
                          const std::vector<std::string>& class_names);
void write_label_csv(const std::filesystem::path& path, const LabelVector& labels);

/// Reads a manifest of the form
///   { "classifiers": [{"id": ..., "path": ...}, ...], "labels": ..., "class_names": [...] }
/// Relative paths resolve against the manifest's directory.
EnsembleInput load_ensemble(const std::filesystem::path& manifest_path);

/// Writes one CSV per member, a label CSV, and `manifest_name` into `dir`.
/// Returns the manifest path.
std::filesystem::path write_ensemble(const EnsembleInput& input, const std::filesystem::path& dir,
                                     std::string_view manifest_name = "manifest.json");

/// Whole-file helpers shared by the artifact writers.
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace ensemble_forge
