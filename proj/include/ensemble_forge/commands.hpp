#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ensemble_forge/fusion.hpp"
#include "ensemble_forge/ga.hpp"
#include "ensemble_forge/serialize.hpp"
#include "ensemble_forge/synth.hpp"

namespace ensemble_forge {

struct ReportFormats {
  bool json = true;
  bool csv = true;

  /// Comma-separated subset of {json, csv}; throws ConfigInvalid.
  static ReportFormats parse(const std::string& text);
};

struct RunConfig {
  std::filesystem::path manifest_path;
  std::optional<std::filesystem::path> eval_manifest_path;
  GAConfig ga;
  std::filesystem::path output_dir;
  ReportFormats formats;

  /// Checks the GA config and manifest distinctness, then creates output_dir.
  void prepare() const;
};

/// Seed precedence: explicit flag, then ENSEMBLE_FORGE_SEED, then `fallback`.
std::uint64_t resolve_seed(std::optional<std::uint64_t> flag, std::uint64_t fallback = 42);

struct OptimizeOutcome {
  GAResult ga;
  EvaluationReport fit;
  std::optional<EvaluationReport> holdout;
};

/// Writes weights.json, ga_history.csv, report_fit.json and, with a held-out
/// manifest, report_holdout.json. `csv` adds confusion_*.csv, `json` adds ga_result.json.
OptimizeOutcome cmd_optimize(const RunConfig& run);

/// Writes comparison.csv (and comparison.json with the json format): one row
/// per member, the uniform average and the GA fusion, per split.
std::vector<ComparisonRow> cmd_compare(const RunConfig& run);

/// Fuses `manifest_path` under the weights in `weights_path` and writes
/// report.json and confusion.csv into `output_dir`.
EvaluationReport cmd_evaluate(const std::filesystem::path& weights_path,
                              const std::filesystem::path& manifest_path,
                              const std::filesystem::path& output_dir,
                              ReportFormats formats = {});

/// Generates a synthetic ensemble and writes it in the manifest/CSV formats.
std::filesystem::path cmd_synth(const SynthSpec& spec, const std::filesystem::path& output_dir);

/// Runs `body`, mapping library errors to exit codes (I/O 2, validation 3, config 4).
int run_guarded(const std::function<void()>& body, std::ostream& err);

}  // namespace ensemble_forge
