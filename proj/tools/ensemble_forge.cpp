// ensemble-forge: fit and evaluate GA-weighted soft-voting ensembles.

#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "ensemble_forge/commands.hpp"
#include "ensemble_forge/error.hpp"

namespace ef = ensemble_forge;

namespace {

struct GaFlags {
  std::optional<std::uint64_t> seed;
  ef::GAConfig config;
};

void add_ga_flags(CLI::App* cmd, GaFlags& flags) {
  cmd->add_option("--seed", flags.seed, "RNG seed (falls back to ENSEMBLE_FORGE_SEED, then 42)");
  cmd->add_option("--generations", flags.config.generations, "GA generations")->capture_default_str();
  cmd->add_option("--population", flags.config.population_size, "GA population size")->capture_default_str();
  cmd->add_option("--tournament", flags.config.tournament_size, "tournament size")->capture_default_str();
  cmd->add_option("--elite", flags.config.elite_count, "elite chromosomes carried over")->capture_default_str();
  cmd->add_option("--crossover-rate", flags.config.crossover_rate)->capture_default_str();
  cmd->add_option("--mutation-rate", flags.config.mutation_rate_per_gene, "per-gene mutation probability")
      ->capture_default_str();
  cmd->add_option("--mutation-sigma", flags.config.mutation_sigma)->capture_default_str();
}

// "0.9,0.1;0.2,0.8" -> rows of skill.
std::vector<std::vector<double>> parse_skill(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::stringstream rows_in(text);
  std::string row_text;
  while (std::getline(rows_in, row_text, ';')) {
    auto& row = rows.emplace_back();
    std::stringstream cells(row_text);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw ef::Error(ef::ErrorKind::SpecInvalid, "bad skill entry '" + cell + "'");
      }
    }
  }
  return rows;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"GA-weighted soft-voting ensembles: optimize, evaluate, compare, synth"};
  app.require_subcommand(1);

  std::string manifest, eval_manifest, out = ".", formats = "json,csv", weights;
  GaFlags ga;

  auto* optimize = app.add_subcommand("optimize", "fit ensemble weights with the GA");
  auto* compare = app.add_subcommand("compare", "compare members, uniform average and GA fusion");
  for (auto* cmd : {optimize, compare}) {
    cmd->add_option("--manifest", manifest, "fit-split manifest JSON")->required();
    cmd->add_option("--eval-manifest", eval_manifest, "held-out manifest JSON");
    cmd->add_option("--out", out, "output directory")->capture_default_str();
    cmd->add_option("--format", formats, "report formats: json,csv")->capture_default_str();
    add_ga_flags(cmd, ga);
  }

  auto* evaluate = app.add_subcommand("evaluate", "report the fused ensemble under given weights");
  evaluate->add_option("--weights", weights, "weights JSON (object with 'genes' or a bare array)")->required();
  evaluate->add_option("--manifest", manifest, "manifest JSON")->required();
  evaluate->add_option("--out", out, "output directory")->capture_default_str();
  evaluate->add_option("--format", formats, "report formats: json,csv")->capture_default_str();

  auto* synth = app.add_subcommand("synth", "write a synthetic ensemble");
  std::size_t members = 3, samples = 200, classes = 4;
  double concentration = 8.0, expert_skill = 0.95, base_skill = 0.3;
  std::string design = "random", skill;
  std::optional<std::uint64_t> synth_seed;
  synth->add_option("--members", members)->capture_default_str();
  synth->add_option("--samples", samples)->capture_default_str();
  synth->add_option("--classes", classes)->capture_default_str();
  synth->add_option("--concentration", concentration)->capture_default_str();
  synth->add_option("--design", design, "random | blocks")->capture_default_str();
  synth->add_option("--expert-skill", expert_skill, "blocks design: skill on own classes")->capture_default_str();
  synth->add_option("--base-skill", base_skill, "blocks design: skill elsewhere")->capture_default_str();
  synth->add_option("--skill", skill, "explicit skill matrix, rows ';'-separated, entries ','-separated");
  synth->add_option("--seed", synth_seed, "RNG seed (falls back to ENSEMBLE_FORGE_SEED, then 42)");
  synth->add_option("--out", out, "output directory")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return static_cast<int>(ef::ErrorFamily::Config);
  }

  return ef::run_guarded(
      [&] {
        if (*optimize || *compare) {
          ef::RunConfig run;
          run.manifest_path = manifest;
          if (!eval_manifest.empty()) run.eval_manifest_path = eval_manifest;
          run.ga = ga.config;
          run.ga.rng_seed = ef::resolve_seed(ga.seed);
          run.output_dir = out;
          run.formats = ef::ReportFormats::parse(formats);
          if (*optimize) {
            const auto outcome = ef::cmd_optimize(run);
            std::cout << "best_mse " << outcome.ga.best_mse << "  fit accuracy " << outcome.fit.accuracy;
            if (outcome.holdout) std::cout << "  holdout accuracy " << outcome.holdout->accuracy;
            std::cout << '\n';
          } else {
            for (const auto& row : ef::cmd_compare(run)) {
              std::cout << row.split << ' ' << row.id << ' ' << row.kind << " accuracy " << row.accuracy
                        << " mse " << row.mse << '\n';
            }
          }
        } else if (*evaluate) {
          const auto report = ef::cmd_evaluate(weights, manifest, out, ef::ReportFormats::parse(formats));
          std::cout << "accuracy " << report.accuracy << "  mse " << report.mse << '\n';
        } else if (*synth) {
          const std::uint64_t seed = ef::resolve_seed(synth_seed);
          ef::SynthSpec spec;
          if (!skill.empty()) {
            spec = ef::SynthSpec{members, samples, classes, parse_skill(skill), concentration, seed};
          } else if (design == "blocks") {
            spec = ef::block_specialists_spec(members, samples, classes, seed, expert_skill, base_skill,
                                              concentration);
          } else if (design == "random") {
            spec = ef::random_skill_spec(members, samples, classes, seed, concentration);
          } else {
            throw ef::Error(ef::ErrorKind::SpecInvalid, "unknown design '" + design + "'");
          }
          std::cout << ef::cmd_synth(spec, out).string() << '\n';
        }
      },
      std::cerr);
}
