#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "ensemble_forge/fusion.hpp"
#include "ensemble_forge/random.hpp"
#include "ensemble_forge/types.hpp"

namespace ensemble_forge {

struct GAConfig {
  std::size_t population_size = 48;
  std::size_t generations = 30;
  std::size_t tournament_size = 3;
  double crossover_rate = 0.9;
  double mutation_rate_per_gene = 0.1;
  double mutation_sigma = 0.15;
  std::size_t elite_count = 2;
  std::uint64_t rng_seed = 42;

  /// Throws ConfigInvalid naming the first violated constraint.
  void validate() const;
};

struct GenerationStats {
  double best_mse = 0.0;
  double mean_mse = 0.0;
  bool operator==(const GenerationStats&) const = default;
};

struct GAResult {
  WeightVector best_weights{std::vector<double>{1.0}};
  double best_mse = 0.0;
  /// Entry 0 is the initial population; best_mse is the best seen so far.
  std::vector<GenerationStats> history;
  std::size_t evaluations = 0;

  bool operator==(const GAResult&) const = default;
};

/// Unit vectors e_1..e_N (clipped to the population size), then the all-0.5
/// vector if room remains, then uniform random genes. All-zero draws are redrawn.
std::vector<WeightVector> seed_population(const GAConfig& config, std::size_t n_members, Rng& rng);
std::vector<WeightVector> seed_population(const GAConfig& config, std::size_t n_members);

/// Index of the lowest-MSE contestant among `tournament_size` draws with
/// replacement; ties go to the earlier draw.
std::size_t tournament_select(std::span<const double> mse, std::size_t tournament_size, Rng& rng);

/// With probability `rate`, swaps each gene position between the two children on a fair coin.
void uniform_crossover(std::vector<double>& a, std::vector<double>& b, double rate, Rng& rng);

/// Additive Gaussian noise on each gene with probability `rate`, clipped to
/// [0, 1]; an all-zero result gets one random gene redrawn from (0, 1].
void mutate(std::vector<double>& genes, double rate, double sigma, Rng& rng);

/// Called after every generation's fitness evaluation (generation 0 = seeds).
using GenerationObserver =
    std::function<void(std::size_t generation, std::span<const WeightVector> population,
                       std::span<const double> mse)>;

/// Searches for soft-voting weights minimizing fused MSE (fitness = -MSE).
GAResult ga_optimize(const EnsembleInput& input, const GAConfig& config,
                     const GenerationObserver& observer = {});

}  // namespace ensemble_forge
