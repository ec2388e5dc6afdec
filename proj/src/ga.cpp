#include "ensemble_forge/ga.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "ensemble_forge/error.hpp"

namespace ensemble_forge {

void GAConfig::validate() const {
  const auto fail = [](const std::string& what) { throw Error(ErrorKind::ConfigInvalid, what); };
  if (population_size < 2) fail("population_size must be >= 2, got " + std::to_string(population_size));
  if (generations < 1) fail("generations must be >= 1");
  if (elite_count >= population_size) {
    fail("elite_count (" + std::to_string(elite_count) + ") must be < population_size (" +
         std::to_string(population_size) + ")");
  }
  if (tournament_size < 1 || tournament_size > population_size) {
    fail("tournament_size must lie in [1, population_size], got " + std::to_string(tournament_size));
  }
  if (!(crossover_rate >= 0.0 && crossover_rate <= 1.0)) fail("crossover_rate must lie in [0, 1]");
  if (!(mutation_rate_per_gene >= 0.0 && mutation_rate_per_gene <= 1.0)) {
    fail("mutation_rate_per_gene must lie in [0, 1]");
  }
  if (!(mutation_sigma > 0.0) || !std::isfinite(mutation_sigma)) fail("mutation_sigma must be positive");
}

std::vector<WeightVector> seed_population(const GAConfig& config, std::size_t n_members, Rng& rng) {
  config.validate();
  if (n_members == 0) throw Error(ErrorKind::ConfigInvalid, "ensemble has no members");

  std::vector<WeightVector> population;
  population.reserve(config.population_size);
  for (std::size_t i = 0; i < n_members && population.size() < config.population_size; ++i) {
    population.push_back(WeightVector::unit(n_members, i));
  }
  if (population.size() < config.population_size) population.push_back(WeightVector::uniform(n_members));

  while (population.size() < config.population_size) {
    std::vector<double> genes(n_members);
    do {
      for (double& g : genes) g = rng.uniform();
    } while (std::all_of(genes.begin(), genes.end(), [](double g) { return g == 0.0; }));
    population.emplace_back(std::move(genes));
  }
  return population;
}

std::vector<WeightVector> seed_population(const GAConfig& config, std::size_t n_members) {
  Rng rng(config.rng_seed);
  return seed_population(config, n_members, rng);
}

std::size_t tournament_select(std::span<const double> mse, std::size_t tournament_size, Rng& rng) {
  std::size_t winner = static_cast<std::size_t>(rng.below(mse.size()));
  for (std::size_t k = 1; k < tournament_size; ++k) {
    const auto challenger = static_cast<std::size_t>(rng.below(mse.size()));
    if (mse[challenger] < mse[winner]) winner = challenger;
  }
  return winner;
}

void uniform_crossover(std::vector<double>& a, std::vector<double>& b, double rate, Rng& rng) {
  if (!(rng.uniform() < rate)) return;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (rng.uniform() < 0.5) std::swap(a[i], b[i]);
  }
}

void mutate(std::vector<double>& genes, double rate, double sigma, Rng& rng) {
  for (double& g : genes) {
    if (rng.uniform() < rate) g = std::clamp(g + sigma * rng.normal(), 0.0, 1.0);
  }
  if (std::all_of(genes.begin(), genes.end(), [](double g) { return g == 0.0; })) {
    genes[static_cast<std::size_t>(rng.below(genes.size()))] = rng.uniform_open_closed();
  }
}

namespace {

double fitness_mse(const EnsembleInput& input, const WeightVector& w) {
  return mse(fuse(input, w), input.labels());
}

double mean_of(const std::vector<double>& values) {
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

// Lowest MSE, earliest index on ties.
std::size_t best_index(const std::vector<double>& values) {
  return static_cast<std::size_t>(std::min_element(values.begin(), values.end()) - values.begin());
}

}  // namespace

GAResult ga_optimize(const EnsembleInput& input, const GAConfig& config, const GenerationObserver& observer) {
  config.validate();
  Rng rng(config.rng_seed);
  const std::size_t n = input.num_members();

  std::vector<WeightVector> population = seed_population(config, n, rng);
  std::vector<double> scores(population.size());
  for (std::size_t k = 0; k < population.size(); ++k) scores[k] = fitness_mse(input, population[k]);

  GAResult result;
  result.evaluations = population.size();
  std::size_t best = best_index(scores);
  result.best_weights = population[best];
  result.best_mse = scores[best];
  result.history.push_back({result.best_mse, mean_of(scores)});
  if (observer) observer(0, population, scores);

  std::vector<std::size_t> order(population.size());
  for (std::size_t gen = 1; gen <= config.generations; ++gen) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

    std::vector<WeightVector> next;
    std::vector<double> next_scores;
    next.reserve(config.population_size);
    next_scores.reserve(config.population_size);
    for (std::size_t e = 0; e < config.elite_count; ++e) {
      next.push_back(population[order[e]]);
      next_scores.push_back(scores[order[e]]);
    }

    while (next.size() < config.population_size) {
      const std::size_t pa = tournament_select(scores, config.tournament_size, rng);
      const std::size_t pb = tournament_select(scores, config.tournament_size, rng);
      std::vector<double> a = population[pa].genes();
      std::vector<double> b = population[pb].genes();
      uniform_crossover(a, b, config.crossover_rate, rng);
      mutate(a, config.mutation_rate_per_gene, config.mutation_sigma, rng);
      mutate(b, config.mutation_rate_per_gene, config.mutation_sigma, rng);
      next.emplace_back(std::move(a));
      if (next.size() < config.population_size) next.emplace_back(std::move(b));
    }

    // Offspring fitness is independent per chromosome and stored by index.
    next_scores.resize(next.size());
    for (std::size_t k = config.elite_count; k < next.size(); ++k) {
      next_scores[k] = fitness_mse(input, next[k]);
    }
    result.evaluations += next.size() - config.elite_count;

    population = std::move(next);
    scores = std::move(next_scores);

    best = best_index(scores);
    if (scores[best] < result.best_mse) {
      result.best_mse = scores[best];
      result.best_weights = population[best];
    }
    result.history.push_back({result.best_mse, mean_of(scores)});
    if (observer) observer(gen, population, scores);
  }
  return result;
}

}  // namespace ensemble_forge
