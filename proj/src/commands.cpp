#include "ensemble_forge/commands.hpp"

#include <charconv>
#include <cstdlib>
#include <ostream>
#include <sstream>

#include "ensemble_forge/error.hpp"
#include "ensemble_forge/io.hpp"

namespace ensemble_forge {
namespace fs = std::filesystem;

ReportFormats ReportFormats::parse(const std::string& text) {
  ReportFormats formats{false, false};
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "json") {
      formats.json = true;
    } else if (item == "csv") {
      formats.csv = true;
    } else {
      throw Error(ErrorKind::ConfigInvalid, "unknown report format '" + item + "'");
    }
  }
  if (!formats.json && !formats.csv) throw Error(ErrorKind::ConfigInvalid, "no report format given");
  return formats;
}

namespace {

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw Error(ErrorKind::WriteFailed, "cannot create output directory '" + dir.string() + "'");
  }
}

void write_json(const fs::path& path, const nlohmann::json& j) {
  write_text_file(path, j.dump(2) + "\n");
}

void write_report(const fs::path& dir, const std::string& stem, const EvaluationReport& report,
                  const std::vector<std::string>& class_names, bool with_csv) {
  write_json(dir / ("report_" + stem + ".json"), to_json(report, class_names));
  if (with_csv) write_text_file(dir / ("confusion_" + stem + ".csv"), confusion_csv(report, class_names));
}

// Held-out data must describe the same classifiers in the same order.
void check_same_members(const EnsembleInput& fit, const EnsembleInput& held_out) {
  if (fit.num_members() != held_out.num_members()) {
    throw Error(ErrorKind::LengthMismatch, "fit manifest has " + std::to_string(fit.num_members()) +
                                               " classifiers, held-out manifest has " +
                                               std::to_string(held_out.num_members()));
  }
  if (fit.member_ids() != held_out.member_ids()) {
    throw Error(ErrorKind::ShapeMismatch, "fit and held-out manifests list different classifier ids");
  }
  if (fit.num_classes() != held_out.num_classes()) {
    throw Error(ErrorKind::ShapeMismatch, "fit and held-out manifests differ in class count");
  }
}

}  // namespace

void RunConfig::prepare() const {
  ga.validate();
  if (eval_manifest_path) {
    std::error_code ec1, ec2;
    const auto a = fs::weakly_canonical(manifest_path, ec1);
    const auto b = fs::weakly_canonical(*eval_manifest_path, ec2);
    if ((!ec1 && !ec2 && a == b) || manifest_path == *eval_manifest_path) {
      throw Error(ErrorKind::ConfigInvalid, "fit and held-out manifests must differ");
    }
  }
  ensure_dir(output_dir);
}

std::uint64_t resolve_seed(std::optional<std::uint64_t> flag, std::uint64_t fallback) {
  if (flag) return *flag;
  const char* env = std::getenv("ENSEMBLE_FORGE_SEED");
  if (env == nullptr || *env == '\0') return fallback;
  const std::string_view text(env);
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error(ErrorKind::ConfigInvalid, "ENSEMBLE_FORGE_SEED='" + std::string(text) + "' is not an unsigned integer");
  }
  return value;
}

OptimizeOutcome cmd_optimize(const RunConfig& run) {
  run.prepare();
  const EnsembleInput fit = load_ensemble(run.manifest_path);
  std::optional<EnsembleInput> held_out;
  if (run.eval_manifest_path) {
    held_out = load_ensemble(*run.eval_manifest_path);
    check_same_members(fit, *held_out);
  }

  OptimizeOutcome outcome{ga_optimize(fit, run.ga), {}, std::nullopt};
  const auto ids = fit.member_ids();
  write_json(run.output_dir / "weights.json",
             weights_json(outcome.ga.best_weights, ids, outcome.ga.best_mse, run.ga));
  write_text_file(run.output_dir / "ga_history.csv", history_csv(outcome.ga));
  if (run.formats.json) write_json(run.output_dir / "ga_result.json", to_json(outcome.ga, ids));

  outcome.fit = evaluate(fuse(fit, outcome.ga.best_weights), fit.labels());
  write_report(run.output_dir, "fit", outcome.fit, fit.class_names(), run.formats.csv);
  if (held_out) {
    outcome.holdout = evaluate(fuse(*held_out, outcome.ga.best_weights), held_out->labels());
    write_report(run.output_dir, "holdout", *outcome.holdout, held_out->class_names(), run.formats.csv);
  }
  return outcome;
}

namespace {

void append_rows(std::vector<ComparisonRow>& rows, const std::string& split, const EnsembleInput& input,
                 const WeightVector& ga_weights) {
  const auto& labels = input.labels();
  for (const auto& m : input.members()) {
    const auto report = evaluate(as_prediction(m), labels);
    rows.push_back({split, m.classifier_id(), "member", report.accuracy, report.mse});
  }
  const auto uniform = evaluate(fuse(input, WeightVector::uniform(input.num_members())), labels);
  rows.push_back({split, "uniform_average", "uniform", uniform.accuracy, uniform.mse});
  const auto ga = evaluate(fuse(input, ga_weights), labels);
  rows.push_back({split, "ga_ensemble", "ga", ga.accuracy, ga.mse});
}

}  // namespace

std::vector<ComparisonRow> cmd_compare(const RunConfig& run) {
  run.prepare();
  const EnsembleInput fit = load_ensemble(run.manifest_path);
  std::optional<EnsembleInput> held_out;
  if (run.eval_manifest_path) {
    held_out = load_ensemble(*run.eval_manifest_path);
    check_same_members(fit, *held_out);
  }

  const GAResult result = ga_optimize(fit, run.ga);
  std::vector<ComparisonRow> rows;
  append_rows(rows, "fit", fit, result.best_weights);
  if (held_out) append_rows(rows, "holdout", *held_out, result.best_weights);

  write_text_file(run.output_dir / "comparison.csv", comparison_csv(rows));
  if (run.formats.json) write_json(run.output_dir / "comparison.json", to_json(rows));
  return rows;
}

EvaluationReport cmd_evaluate(const fs::path& weights_path, const fs::path& manifest_path,
                              const fs::path& output_dir, ReportFormats formats) {
  const EnsembleInput input = load_ensemble(manifest_path);
  const WeightsFile file = read_weights_file(weights_path);
  if (file.genes.size() != input.num_members()) {
    throw Error(ErrorKind::LengthMismatch, weights_path.string() + " has " + std::to_string(file.genes.size()) +
                                               " weights, manifest has " +
                                               std::to_string(input.num_members()) + " classifiers");
  }
  if (!file.classifier_ids.empty() && file.classifier_ids != input.member_ids()) {
    throw Error(ErrorKind::ShapeMismatch, weights_path.string() + " was fitted for different classifier ids");
  }
  ensure_dir(output_dir);

  const auto report = evaluate(fuse(input, WeightVector(file.genes)), input.labels());
  const auto names = input.class_names();
  if (formats.json) write_json(output_dir / "report.json", to_json(report, names));
  if (formats.csv) write_text_file(output_dir / "confusion.csv", confusion_csv(report, names));
  return report;
}

fs::path cmd_synth(const SynthSpec& spec, const fs::path& output_dir) {
  return write_ensemble(generate(spec), output_dir);
}

int run_guarded(const std::function<void()>& body, std::ostream& err) {
  try {
    body();
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.exit_code();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace ensemble_forge
