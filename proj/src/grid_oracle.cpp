#include "ensemble_forge/grid_oracle.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "ensemble_forge/error.hpp"

namespace ensemble_forge {

void enumerate_simplex_grid(std::size_t n, std::size_t cells,
                            const std::function<void(std::span<const double>)>& visit) {
  if (n == 0) return;
  std::vector<std::size_t> counts(n, 0);
  std::vector<double> point(n, 0.0);
  const double denom = static_cast<double>(cells);

  // Coordinates 0..n-2 are free; the last takes the remainder.
  std::function<void(std::size_t, std::size_t)> recurse = [&](std::size_t dim, std::size_t remaining) {
    if (dim + 1 == n) {
      counts[dim] = remaining;
      for (std::size_t i = 0; i < n; ++i) point[i] = static_cast<double>(counts[i]) / denom;
      visit(point);
      return;
    }
    for (std::size_t k = 0; k <= remaining; ++k) {
      counts[dim] = k;
      recurse(dim + 1, remaining - k);
    }
  };
  recurse(0, cells);
}

std::size_t grid_cells(double step) {
  if (!(step > 0.0) || !std::isfinite(step) || step > 1.0) {
    throw Error(ErrorKind::BadStep, "step must lie in (0, 1], got " + std::to_string(step));
  }
  const double inverse = 1.0 / step;
  const double rounded = std::round(inverse);
  if (std::abs(rounded * step - 1.0) > 1e-9) {
    throw Error(ErrorKind::BadStep, "step " + std::to_string(step) + " does not divide 1");
  }
  return static_cast<std::size_t>(rounded);
}

GridOracleResult grid_oracle(const EnsembleInput& input, double step) {
  const std::size_t n = input.num_members();
  if (n > kGridOracleMaxMembers) {
    throw Error(ErrorKind::TooManyMembers, std::to_string(n) + " members exceeds the grid oracle limit of " +
                                               std::to_string(kGridOracleMaxMembers));
  }
  const std::size_t cells = grid_cells(step);

  std::optional<WeightVector> best;
  double best_mse = std::numeric_limits<double>::infinity();
  std::size_t evaluated = 0;
  enumerate_simplex_grid(n, cells, [&](std::span<const double> point) {
    WeightVector w(std::vector<double>(point.begin(), point.end()));
    const double value = mse(fuse(input, w), input.labels());
    ++evaluated;
    if (value < best_mse) {
      best_mse = value;
      best = std::move(w);
    }
  });
  return {std::move(*best), best_mse, evaluated};
}

}  // namespace ensemble_forge
