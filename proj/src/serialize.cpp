#include "ensemble_forge/serialize.hpp"

#include "ensemble_forge/error.hpp"
#include "ensemble_forge/io.hpp"

namespace ensemble_forge {
using nlohmann::json;

json to_json(const EvaluationReport& report, const std::vector<std::string>& class_names) {
  json j;
  j["num_samples"] = report.num_samples;
  j["accuracy"] = report.accuracy;
  j["mse"] = report.mse;
  j["class_names"] = class_names;
  j["per_class_recall"] = report.per_class_recall;
  j["zero_support"] = report.zero_support;
  j["support"] = report.support;
  j["confusion"] = report.confusion;
  return j;
}

json to_json(const GAConfig& config) {
  return {
      {"population_size", config.population_size},
      {"generations", config.generations},
      {"tournament_size", config.tournament_size},
      {"crossover_rate", config.crossover_rate},
      {"mutation_rate_per_gene", config.mutation_rate_per_gene},
      {"mutation_sigma", config.mutation_sigma},
      {"elite_count", config.elite_count},
      {"rng_seed", config.rng_seed},
  };
}

json to_json(const GAResult& result, const std::vector<std::string>& classifier_ids) {
  json history = json::array();
  for (std::size_t g = 0; g < result.history.size(); ++g) {
    history.push_back({{"generation", g},
                       {"best_mse", result.history[g].best_mse},
                       {"mean_mse", result.history[g].mean_mse}});
  }
  return {
      {"classifier_ids", classifier_ids},
      {"best_weights", result.best_weights.genes()},
      {"best_weights_normalized", result.best_weights.normalized()},
      {"best_mse", result.best_mse},
      {"evaluations", result.evaluations},
      {"history", std::move(history)},
  };
}

std::string confusion_csv(const EvaluationReport& report, const std::vector<std::string>& class_names) {
  std::string out = "true_class";
  for (const auto& name : class_names) out += "," + name;
  out += '\n';
  for (std::size_t r = 0; r < report.confusion.size(); ++r) {
    out += class_names.at(r);
    for (std::size_t count : report.confusion[r]) out += "," + std::to_string(count);
    out += '\n';
  }
  return out;
}

std::string history_csv(const GAResult& result) {
  std::string out = "generation,best_mse,mean_mse\n";
  for (std::size_t g = 0; g < result.history.size(); ++g) {
    out += std::to_string(g) + "," + format_double(result.history[g].best_mse) + "," +
           format_double(result.history[g].mean_mse) + "\n";
  }
  return out;
}

json weights_json(const WeightVector& weights, const std::vector<std::string>& classifier_ids,
                  double fit_mse, const GAConfig& config) {
  return {
      {"classifier_ids", classifier_ids},
      {"genes", weights.genes()},
      {"normalized", weights.normalized()},
      {"fit_mse", fit_mse},
      {"ga", to_json(config)},
  };
}

WeightsFile read_weights_file(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  const auto fail = [&](const std::string& what) {
    return Error(ErrorKind::ArtifactParse, path.string() + ": " + what);
  };
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw fail(e.what());
  }

  const json* genes = &j;
  WeightsFile out;
  if (j.is_object()) {
    if (!j.contains("genes")) throw fail("missing 'genes'");
    genes = &j["genes"];
    if (j.contains("classifier_ids")) {
      if (!j["classifier_ids"].is_array()) throw fail("'classifier_ids' must be an array");
      for (const auto& id : j["classifier_ids"]) {
        if (!id.is_string()) throw fail("'classifier_ids' must hold strings");
        out.classifier_ids.push_back(id.get<std::string>());
      }
    }
  }
  if (!genes->is_array() || genes->empty()) throw fail("genes must be a non-empty array of numbers");
  for (const auto& g : *genes) {
    if (!g.is_number()) throw fail("genes must be numbers");
    out.genes.push_back(g.get<double>());
  }
  if (!out.classifier_ids.empty() && out.classifier_ids.size() != out.genes.size()) {
    throw fail("classifier_ids and genes differ in length");
  }
  return out;
}

std::string comparison_csv(const std::vector<ComparisonRow>& rows) {
  std::string out = "split,id,kind,accuracy,mse\n";
  for (const auto& row : rows) {
    out += row.split + "," + row.id + "," + row.kind + "," + format_double(row.accuracy) + "," +
           format_double(row.mse) + "\n";
  }
  return out;
}

json to_json(const std::vector<ComparisonRow>& rows) {
  json out = json::array();
  for (const auto& row : rows) {
    out.push_back({{"split", row.split},
                   {"id", row.id},
                   {"kind", row.kind},
                   {"accuracy", row.accuracy},
                   {"mse", row.mse}});
  }
  return out;
}

}  // namespace ensemble_forge
