#include "ensemble_forge/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ensemble_forge/error.hpp"

namespace ensemble_forge {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma == std::string_view::npos ? line.npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

// Non-blank lines; line numbers are 1-based for messages.
struct CsvLines {
  std::vector<std::pair<std::size_t, std::string>> lines;
};

CsvLines read_lines(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::FileNotFound, "cannot open '" + path.string() + "'");
  CsvLines result;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (trim(line).empty()) continue;
    result.lines.emplace_back(number, line);
  }
  return result;
}

double parse_double(std::string_view field, const fs::path& path, std::size_t line) {
  double value = 0.0;
  const auto* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (field.empty() || ec != std::errc() || ptr != end) {
    throw Error(ErrorKind::CsvParse, path.string() + ":" + std::to_string(line) + ": '" +
                                         std::string(field) + "' is not a number");
  }
  return value;
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

std::string read_text_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::FileNotFound, "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const fs::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::WriteFailed, "cannot write '" + path.string() + "'");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw Error(ErrorKind::WriteFailed, "short write to '" + path.string() + "'");
}

PredictionCsv read_prediction_csv(const fs::path& path, std::string classifier_id) {
  const auto csv = read_lines(path);
  if (csv.lines.empty()) throw Error(ErrorKind::EmptyMatrix, "'" + path.string() + "' is empty");

  std::vector<std::string> header;
  for (auto field : split_fields(csv.lines.front().second)) header.emplace_back(field);

  std::vector<std::vector<double>> rows;
  rows.reserve(csv.lines.size() - 1);
  for (std::size_t i = 1; i < csv.lines.size(); ++i) {
    const auto& [number, text] = csv.lines[i];
    const auto fields = split_fields(text);
    if (fields.size() != header.size()) {
      throw Error(ErrorKind::NonRectangular, path.string() + ":" + std::to_string(number) + ": " +
                                                 std::to_string(fields.size()) + " fields, header has " +
                                                 std::to_string(header.size()));
    }
    auto& row = rows.emplace_back();
    row.reserve(fields.size());
    for (auto field : fields) row.push_back(parse_double(field, path, number));
  }
  return {std::move(header), validate_prediction_matrix(rows, std::move(classifier_id))};
}

std::vector<std::size_t> read_label_csv(const fs::path& path) {
  const auto csv = read_lines(path);
  if (csv.lines.empty() || trim(csv.lines.front().second) != "label") {
    throw Error(ErrorKind::CsvParse, "'" + path.string() + "' must start with a 'label' header");
  }
  std::vector<std::size_t> labels;
  labels.reserve(csv.lines.size() - 1);
  for (std::size_t i = 1; i < csv.lines.size(); ++i) {
    const auto& [number, text] = csv.lines[i];
    const auto field = trim(text);
    long long value = 0;
    const auto* end = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(field.data(), end, value);
    if (field.empty() || ec != std::errc() || ptr != end) {
      throw Error(ErrorKind::CsvParse, path.string() + ":" + std::to_string(number) + ": '" +
                                           std::string(field) + "' is not an integer label");
    }
    if (value < 0) {
      throw Error(ErrorKind::LabelOutOfRange,
                  path.string() + ":" + std::to_string(number) + ": negative label " + std::to_string(value));
    }
    labels.push_back(static_cast<std::size_t>(value));
  }
  return labels;
}

void write_prediction_csv(const fs::path& path, const PredictionMatrix& m,
                          const std::vector<std::string>& class_names) {
  std::string out;
  for (std::size_t c = 0; c < class_names.size(); ++c) {
    if (c) out += ',';
    out += class_names[c];
  }
  out += '\n';
  for (std::size_t s = 0; s < m.num_samples(); ++s) {
    const auto row = m.probs().row(s);
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += format_double(row[c]);
    }
    out += '\n';
  }
  write_text_file(path, out);
}

void write_label_csv(const fs::path& path, const LabelVector& labels) {
  std::string out = "label\n";
  for (std::size_t label : labels.labels()) {
    out += std::to_string(label);
    out += '\n';
  }
  write_text_file(path, out);
}

EnsembleInput load_ensemble(const fs::path& manifest_path) {
  const std::string text = read_text_file(manifest_path);
  json manifest;
  try {
    manifest = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ManifestParse, manifest_path.string() + ": " + e.what());
  }
  const auto fail = [&](const std::string& what) {
    return Error(ErrorKind::ManifestParse, manifest_path.string() + ": " + what);
  };
  if (!manifest.is_object()) throw fail("manifest must be a JSON object");
  if (!manifest.contains("classifiers") || !manifest["classifiers"].is_array() ||
      manifest["classifiers"].empty()) {
    throw fail("'classifiers' must be a non-empty array");
  }
  if (!manifest.contains("labels") || !manifest["labels"].is_string()) {
    throw fail("'labels' must be a path string");
  }

  const fs::path base = manifest_path.parent_path();
  const auto resolve = [&](const std::string& p) {
    const fs::path candidate(p);
    return candidate.is_absolute() ? candidate : base / candidate;
  };

  std::vector<PredictionMatrix> members;
  std::vector<std::string> first_header;
  for (const auto& entry : manifest["classifiers"]) {
    if (!entry.is_object() || !entry.contains("id") || !entry["id"].is_string() ||
        !entry.contains("path") || !entry["path"].is_string()) {
      throw fail("each classifier needs string 'id' and 'path'");
    }
    auto csv = read_prediction_csv(resolve(entry["path"].get<std::string>()), entry["id"].get<std::string>());
    if (members.empty()) first_header = std::move(csv.header);
    members.push_back(std::move(csv.matrix));
  }

  std::optional<std::vector<std::string>> class_names;
  if (manifest.contains("class_names")) {
    const auto& names = manifest["class_names"];
    if (!names.is_array()) throw fail("'class_names' must be an array of strings");
    std::vector<std::string> parsed;
    for (const auto& n : names) {
      if (!n.is_string()) throw fail("'class_names' must be an array of strings");
      parsed.push_back(n.get<std::string>());
    }
    class_names = std::move(parsed);
  } else {
    class_names = std::move(first_header);
  }

  auto labels = read_label_csv(resolve(manifest["labels"].get<std::string>()));
  // Range check against C happens in EnsembleInput::make; pass names only once shapes agree.
  if (class_names->size() != members.front().num_classes()) {
    throw Error(ErrorKind::ShapeMismatch, manifest_path.string() + ": " +
                                              std::to_string(class_names->size()) + " class names for " +
                                              std::to_string(members.front().num_classes()) + " classes");
  }
  for (const auto& m : members) {
    if (m.num_classes() != class_names->size()) {
      throw Error(ErrorKind::ShapeMismatch, "classifier '" + m.classifier_id() + "' has " +
                                                std::to_string(m.num_classes()) + " classes, expected " +
                                                std::to_string(class_names->size()));
    }
  }
  for (std::size_t s = 0; s < labels.size(); ++s) {
    if (labels[s] >= class_names->size()) {
      throw Error(ErrorKind::LabelOutOfRange, "sample " + std::to_string(s) + " has label " +
                                                  std::to_string(labels[s]) + " with " +
                                                  std::to_string(class_names->size()) + " classes");
    }
  }
  return EnsembleInput::make(std::move(members), LabelVector(std::move(labels), std::move(class_names)));
}

fs::path write_ensemble(const EnsembleInput& input, const fs::path& dir, std::string_view manifest_name) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::WriteFailed, "cannot create '" + dir.string() + "': " + ec.message());

  const auto names = input.class_names();
  json manifest;
  manifest["classifiers"] = json::array();
  for (const auto& m : input.members()) {
    const std::string file = m.classifier_id() + ".csv";
    write_prediction_csv(dir / file, m, names);
    manifest["classifiers"].push_back({{"id", m.classifier_id()}, {"path", file}});
  }
  write_label_csv(dir / "labels.csv", input.labels());
  manifest["labels"] = "labels.csv";
  if (input.labels().class_names()) manifest["class_names"] = *input.labels().class_names();

  const fs::path manifest_path = dir / manifest_name;
  write_text_file(manifest_path, manifest.dump(2) + "\n");
  return manifest_path;
}

}  // namespace ensemble_forge
