#include <doctest.h>

#include <cstdlib>
#include <sstream>
#include <sys/wait.h>

#include <json.hpp>

#include "ensemble_forge/commands.hpp"
#include "ensemble_forge/error.hpp"
#include "ensemble_forge/io.hpp"
#include "test_support.hpp"

using namespace ensemble_forge;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CliResult {
  int exit_code;
  std::string output;
};

CliResult run_cli(const std::string& args, const fs::path& scratch) {
  const fs::path log = scratch / "cli.log";
  const std::string cmd = std::string(ENSEMBLE_FORGE_CLI) + " " + args + " > " + log.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, fs::exists(log) ? read_text_file(log) : ""};
}

bool is_number_array(const json& j, std::size_t n) {
  if (!j.is_array() || j.size() != n) return false;
  for (const auto& x : j) {
    if (!x.is_number()) return false;
  }
  return true;
}

// Checks an EvaluationReport JSON against its documented layout.
void check_report_schema(const json& j, std::size_t classes) {
  REQUIRE(j.is_object());
  CHECK(j.at("num_samples").is_number_unsigned());
  CHECK(j.at("accuracy").is_number());
  CHECK(j.at("mse").is_number());
  CHECK(j.at("class_names").size() == classes);
  CHECK(is_number_array(j.at("per_class_recall"), classes));
  CHECK(is_number_array(j.at("support"), classes));
  CHECK(j.at("zero_support").size() == classes);
  REQUIRE(j.at("confusion").size() == classes);
  std::size_t total = 0;
  for (const auto& row : j.at("confusion")) {
    CHECK(is_number_array(row, classes));
    for (const auto& x : row) total += x.get<std::size_t>();
  }
  CHECK(total == j.at("num_samples").get<std::size_t>());
}

void check_weights_schema(const json& j, std::size_t n) {
  CHECK(j.at("classifier_ids").size() == n);
  CHECK(is_number_array(j.at("genes"), n));
  CHECK(is_number_array(j.at("normalized"), n));
  CHECK(j.at("fit_mse").is_number());
  CHECK(j.at("ga").at("population_size").is_number_unsigned());
  double sum = 0.0;
  for (const auto& g : j.at("genes")) CHECK((g.get<double>() >= 0.0 && g.get<double>() <= 1.0));
  for (const auto& g : j.at("normalized")) sum += g.get<double>();
  CHECK(std::abs(sum - 1.0) < 1e-12);
}

std::vector<std::string> csv_lines(const fs::path& p) {
  std::vector<std::string> lines;
  std::stringstream ss(read_text_file(p));
  std::string line;
  while (std::getline(ss, line)) lines.push_back(line);
  return lines;
}

RunConfig run_for(const fs::path& manifest, const fs::path& out) {
  RunConfig run;
  run.manifest_path = manifest;
  run.output_dir = out;
  return run;
}

}  // namespace

TEST_CASE("report formats and seed resolution") {
  CHECK(ReportFormats::parse("json").json);
  CHECK(!ReportFormats::parse("json").csv);
  CHECK(ReportFormats::parse("csv,json").csv);
  CHECK_THROWS_AS(ReportFormats::parse("xml"), Error);

  CHECK(resolve_seed(5) == 5);
  ::setenv("ENSEMBLE_FORGE_SEED", "123", 1);
  CHECK(resolve_seed(std::nullopt) == 123);
  CHECK(resolve_seed(9) == 9);
  ::setenv("ENSEMBLE_FORGE_SEED", "abc", 1);
  CHECK_THROWS_AS(resolve_seed(std::nullopt), Error);
  ::unsetenv("ENSEMBLE_FORGE_SEED");
  CHECK(resolve_seed(std::nullopt) == 42);
}

TEST_CASE("optimize writes every artifact") {
  test::TempDir tmp;
  const auto manifest = cmd_synth(random_skill_spec(3, 200, 4, 7), tmp.path() / "fit");
  const auto held_out = cmd_synth(random_skill_spec(3, 100, 4, 8), tmp.path() / "holdout");
  auto run = run_for(manifest, tmp.path() / "out");
  run.eval_manifest_path = held_out;
  const auto outcome = cmd_optimize(run);

  const auto out = tmp.path() / "out";
  check_weights_schema(json::parse(read_text_file(out / "weights.json")), 3);
  check_report_schema(json::parse(read_text_file(out / "report_fit.json")), 4);
  check_report_schema(json::parse(read_text_file(out / "report_holdout.json")), 4);
  REQUIRE(outcome.holdout);
  CHECK(outcome.fit.mse == outcome.ga.best_mse);

  const auto history = csv_lines(out / "ga_history.csv");
  REQUIRE(history.size() == 32);
  CHECK(history.front() == "generation,best_mse,mean_mse");
  CHECK(history[1].rfind("0,", 0) == 0);
  CHECK(history.back().rfind("30,", 0) == 0);

  const auto confusion = csv_lines(out / "confusion_fit.csv");
  CHECK(confusion.front() == "true_class,class_0,class_1,class_2,class_3");
  CHECK(confusion.size() == 5);

  const auto ga = json::parse(read_text_file(out / "ga_result.json"));
  CHECK(ga.at("history").size() == 31);
  CHECK(ga.at("best_mse").get<double>() == outcome.ga.best_mse);
}

TEST_CASE("optimize is byte-reproducible") {
  test::TempDir tmp;
  const auto manifest = cmd_synth(random_skill_spec(3, 150, 4, 3), tmp.path() / "fit");
  cmd_optimize(run_for(manifest, tmp.path() / "a"));
  cmd_optimize(run_for(manifest, tmp.path() / "b"));
  for (const char* f : {"weights.json", "ga_history.csv", "report_fit.json", "confusion_fit.csv", "ga_result.json"}) {
    CHECK(read_text_file(tmp.path() / "a" / f) == read_text_file(tmp.path() / "b" / f));
  }
}

TEST_CASE("compare: single member, identical members, specialists") {
  test::TempDir tmp;

  SUBCASE("one member") {
    const auto manifest = cmd_synth(random_skill_spec(1, 80, 3, 2), tmp.path() / "in");
    const auto rows = cmd_compare(run_for(manifest, tmp.path() / "out"));
    REQUIRE(rows.size() == 3);
    CHECK(rows[2].kind == "ga");
    CHECK(rows[2].accuracy == rows[0].accuracy);
    CHECK(rows[2].mse == rows[0].mse);
  }
  SUBCASE("two identical members") {
    const auto base = generate(random_skill_spec(1, 120, 4, 6));
    const auto twin = EnsembleInput::make(
        {base.member(0), validate_prediction_matrix(base.member(0).probs(), "twin")}, base.labels());
    const auto manifest = write_ensemble(twin, tmp.path() / "in");
    const auto rows = cmd_compare(run_for(manifest, tmp.path() / "out"));
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].accuracy == rows[1].accuracy);
    CHECK(rows[0].mse == rows[1].mse);
    for (std::size_t k : {2u, 3u}) {
      CHECK(rows[k].accuracy == rows[0].accuracy);
      CHECK(std::abs(rows[k].mse - rows[0].mse) < 1e-12);
    }
  }
  SUBCASE("opposed specialists") {
    const SynthSpec spec{2, 400, 2, {{1.0, 0.0}, {0.0, 1.0}}, 1e4, 11};
    const auto manifest = cmd_synth(spec, tmp.path() / "in");
    const auto rows = cmd_compare(run_for(manifest, tmp.path() / "out"));
    const auto& ga = rows.back();
    for (const auto& r : rows) CHECK(ga.mse <= r.mse);
    CHECK(ga.accuracy >= std::max(rows[0].accuracy, rows[1].accuracy));
    CHECK(ga.accuracy == 0.5425);

    const auto lines = csv_lines(tmp.path() / "out" / "comparison.csv");
    CHECK(lines.front() == "split,id,kind,accuracy,mse");
    CHECK(lines.size() == 5);
    CHECK(json::parse(read_text_file(tmp.path() / "out" / "comparison.json")).size() == 4);
  }
}

TEST_CASE("evaluate: unit weights, scale invariance, length mismatch") {
  test::TempDir tmp;
  const auto input = generate(random_skill_spec(2, 90, 3, 12));
  const auto manifest = write_ensemble(input, tmp.path() / "in");

  write_text_file(tmp.path() / "unit.json", "[1, 0]");
  const auto unit = cmd_evaluate(tmp.path() / "unit.json", manifest, tmp.path() / "unit");
  const auto member = evaluate(as_prediction(load_ensemble(manifest).member(0)), input.labels());
  CHECK(unit.accuracy == member.accuracy);
  CHECK(unit.mse == member.mse);
  CHECK(unit.confusion == member.confusion);
  check_report_schema(json::parse(read_text_file(tmp.path() / "unit" / "report.json")), 3);

  write_text_file(tmp.path() / "half.json", R"({"genes": [0.5, 0.5]})");
  write_text_file(tmp.path() / "ones.json", "[1, 1]");
  cmd_evaluate(tmp.path() / "half.json", manifest, tmp.path() / "half");
  cmd_evaluate(tmp.path() / "ones.json", manifest, tmp.path() / "ones");
  CHECK(read_text_file(tmp.path() / "half" / "report.json") == read_text_file(tmp.path() / "ones" / "report.json"));
  CHECK(read_text_file(tmp.path() / "half" / "confusion.csv") == read_text_file(tmp.path() / "ones" / "confusion.csv"));

  write_text_file(tmp.path() / "three.json", "[0.2, 0.3, 0.5]");
  try {
    cmd_evaluate(tmp.path() / "three.json", manifest, tmp.path() / "three");
    FAIL("expected LengthMismatch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::LengthMismatch);
    CHECK(e.exit_code() == 3);
  }
}

TEST_CASE("evaluate accepts the weights.json written by optimize") {
  test::TempDir tmp;
  const auto manifest = cmd_synth(random_skill_spec(3, 100, 4, 5), tmp.path() / "in");
  const auto outcome = cmd_optimize(run_for(manifest, tmp.path() / "opt"));
  const auto report = cmd_evaluate(tmp.path() / "opt" / "weights.json", manifest, tmp.path() / "eval");
  CHECK(report.accuracy == outcome.fit.accuracy);
  CHECK(report.mse == outcome.fit.mse);
}

TEST_CASE("CLI exit codes") {
  test::TempDir tmp;
  const auto dir = tmp.path().string();
  REQUIRE(run_cli("synth --members 3 --samples 200 --classes 4 --seed 7 --out " + dir + "/in", tmp.path()).exit_code == 0);
  const std::string manifest = dir + "/in/manifest.json";

  SUBCASE("optimize succeeds and writes 31 history rows") {
    const auto r = run_cli("optimize --manifest " + manifest + " --out " + dir + "/out", tmp.path());
    CHECK(r.exit_code == 0);
    CHECK(csv_lines(tmp.path() / "out" / "ga_history.csv").size() == 32);
  }
  SUBCASE("missing labels file is an I/O error naming the path") {
    fs::remove(tmp.path() / "in" / "labels.csv");
    const auto r = run_cli("optimize --manifest " + manifest + " --out " + dir + "/out", tmp.path());
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("labels.csv") != std::string::npos);
  }
  SUBCASE("population of one is a config error") {
    const auto r = run_cli("optimize --population 1 --manifest " + manifest + " --out " + dir + "/out", tmp.path());
    CHECK(r.exit_code == 4);
    CHECK(r.output.find("ConfigInvalid") != std::string::npos);
  }
  SUBCASE("same manifest as held-out split is a config error") {
    const auto r = run_cli("compare --manifest " + manifest + " --eval-manifest " + manifest + " --out " + dir + "/out",
                           tmp.path());
    CHECK(r.exit_code == 4);
  }
  SUBCASE("weights of the wrong length are a validation error") {
    write_text_file(tmp.path() / "w.json", "[0.1, 0.2]");
    const auto r = run_cli("evaluate --weights " + dir + "/w.json --manifest " + manifest + " --out " + dir + "/ev",
                           tmp.path());
    CHECK(r.exit_code == 3);
  }
  SUBCASE("unknown flag is a config error") {
    CHECK(run_cli("optimize --bogus --manifest " + manifest, tmp.path()).exit_code == 4);
  }
  SUBCASE("seed falls back to the environment") {
    const auto a = run_cli("optimize --seed 9 --manifest " + manifest + " --out " + dir + "/a", tmp.path());
    const auto b = run_cli("optimize --manifest " + manifest + " --out " + dir + "/b", tmp.path());
    ::setenv("ENSEMBLE_FORGE_SEED", "9", 1);
    const auto c = run_cli("optimize --manifest " + manifest + " --out " + dir + "/c", tmp.path());
    ::unsetenv("ENSEMBLE_FORGE_SEED");
    CHECK(a.exit_code == 0);
    CHECK(c.exit_code == 0);
    CHECK(read_text_file(tmp.path() / "a" / "weights.json") == read_text_file(tmp.path() / "c" / "weights.json"));
    CHECK(json::parse(read_text_file(tmp.path() / "b" / "weights.json")).at("ga").at("rng_seed") == 42);
  }
}
