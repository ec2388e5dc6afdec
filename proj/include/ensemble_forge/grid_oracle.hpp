#pragma once

#include <cstddef>
#include <functional>
#include <span>

#include "ensemble_forge/fusion.hpp"
#include "ensemble_forge/types.hpp"

namespace ensemble_forge {

inline constexpr std::size_t kGridOracleMaxMembers = 4;

struct GridOracleResult {
  WeightVector weights;
  double mse = 0.0;
  std::size_t evaluated = 0;
};

/// Visits every point of {k / cells : k_i >= 0, sum k_i = cells} in
/// lexicographic order of the integer coordinates.
void enumerate_simplex_grid(std::size_t n, std::size_t cells,
                            const std::function<void(std::span<const double>)>& visit);

/// Number of cells for a step that divides 1; throws BadStep otherwise.
std::size_t grid_cells(double step);

/// Brute-force minimizer of fused MSE over the weight simplex grid.
/// Ties keep the first point visited. Throws TooManyMembers when N > 4.
GridOracleResult grid_oracle(const EnsembleInput& input, double step);

}  // namespace ensemble_forge
