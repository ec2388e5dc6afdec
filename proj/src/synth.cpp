#include "ensemble_forge/synth.hpp"

#include <cmath>
#include <string>

#include "ensemble_forge/error.hpp"
#include "ensemble_forge/random.hpp"

namespace ensemble_forge {

void SynthSpec::validate() const {
  const auto fail = [](const std::string& what) { throw Error(ErrorKind::SpecInvalid, what); };
  if (n_members < 1) fail("n_members must be >= 1");
  if (n_samples < 1) fail("n_samples must be >= 1");
  if (n_classes < 2) fail("n_classes must be >= 2");
  if (!(concentration > 0.0) || !std::isfinite(concentration)) fail("concentration must be positive");
  if (skill.size() != n_members) {
    fail("skill has " + std::to_string(skill.size()) + " rows for " + std::to_string(n_members) + " members");
  }
  for (std::size_t i = 0; i < skill.size(); ++i) {
    if (skill[i].size() != n_classes) {
      fail("skill row " + std::to_string(i) + " has " + std::to_string(skill[i].size()) + " entries");
    }
    for (double p : skill[i]) {
      if (!(p >= 0.0 && p <= 1.0)) fail("skill entries must lie in [0, 1]");
    }
  }
}

EnsembleInput generate(const SynthSpec& spec) {
  spec.validate();
  Rng rng(spec.rng_seed);
  const std::size_t n = spec.n_members;
  const std::size_t samples = spec.n_samples;
  const std::size_t classes = spec.n_classes;

  std::vector<Matrix> raw(n, Matrix(samples, classes));
  std::vector<std::size_t> labels(samples);
  std::vector<double> jitter(classes);
  for (std::size_t s = 0; s < samples; ++s) {
    const auto truth = static_cast<std::size_t>(rng.below(classes));
    labels[s] = truth;
    for (std::size_t i = 0; i < n; ++i) {
      const double coin = rng.uniform();
      auto wrong = static_cast<std::size_t>(rng.below(classes - 1));
      if (wrong >= truth) ++wrong;
      const double peak = spec.concentration * (0.5 + 0.5 * rng.uniform());
      for (double& j : jitter) j = rng.uniform_open_closed();

      const std::size_t target = coin < spec.skill[i][truth] ? truth : wrong;
      auto row = raw[i].row(s);
      double sum = 0.0;
      for (std::size_t c = 0; c < classes; ++c) {
        row[c] = c == target ? peak : jitter[c];
        sum += row[c];
      }
      for (double& p : row) p /= sum;
    }
  }

  std::vector<PredictionMatrix> members;
  members.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    members.push_back(validate_prediction_matrix(std::move(raw[i]), "member_" + std::to_string(i)));
  }
  return EnsembleInput::make(std::move(members), LabelVector(std::move(labels)));
}

SynthSpec random_skill_spec(std::size_t n_members, std::size_t n_samples, std::size_t n_classes,
                            std::uint64_t seed, double concentration) {
  // Separate stream so the skill draw does not alias the sample stream.
  Rng rng(seed ^ 0x9E3779B97F4A7C15ULL);
  SynthSpec spec{n_members, n_samples, n_classes, {}, concentration, seed};
  spec.skill.assign(n_members, std::vector<double>(n_classes));
  for (auto& row : spec.skill) {
    for (double& p : row) p = rng.uniform();
  }
  return spec;
}

SynthSpec block_specialists_spec(std::size_t n_members, std::size_t n_samples, std::size_t n_classes,
                                 std::uint64_t seed, double expert_skill, double base_skill,
                                 double concentration) {
  if (n_members < 1 || n_classes < n_members) {
    throw Error(ErrorKind::SpecInvalid, "block design needs 1 <= n_members <= n_classes");
  }
  SynthSpec spec{n_members, n_samples, n_classes, {}, concentration, seed};
  spec.skill.assign(n_members, std::vector<double>(n_classes, base_skill));
  for (std::size_t c = 0; c < n_classes; ++c) {
    spec.skill[c * n_members / n_classes][c] = expert_skill;
  }
  return spec;
}

}  // namespace ensemble_forge
