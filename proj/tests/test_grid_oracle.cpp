#include <doctest.h>

#include <algorithm>
#include <set>

#include "ensemble_forge/error.hpp"
#include "ensemble_forge/grid_oracle.hpp"
#include "ensemble_forge/synth.hpp"
#include "test_support.hpp"

using namespace ensemble_forge;

TEST_CASE("grid enumeration visits exactly the simplex lattice") {
  std::vector<std::vector<double>> seen;
  enumerate_simplex_grid(2, 2, [&](std::span<const double> p) { seen.emplace_back(p.begin(), p.end()); });
  std::sort(seen.begin(), seen.end());
  CHECK(seen == std::vector<std::vector<double>>{{0.0, 1.0}, {0.5, 0.5}, {1.0, 0.0}});

  // Stars and bars: C(50 + 2, 2) = 1326 for three members at step 0.02.
  std::size_t count = 0;
  std::set<std::vector<double>> distinct;
  enumerate_simplex_grid(3, 50, [&](std::span<const double> p) {
    ++count;
    distinct.emplace(p.begin(), p.end());
    double sum = 0.0;
    for (double x : p) sum += x;
    CHECK(std::abs(sum - 1.0) < 1e-12);
  });
  CHECK(count == 1326);
  CHECK(distinct.size() == 1326);
}

TEST_CASE("grid_cells accepts only steps dividing one") {
  CHECK(grid_cells(0.02) == 50);
  CHECK(grid_cells(0.5) == 2);
  CHECK(grid_cells(1.0) == 1);
  CHECK_THROWS_AS(grid_cells(0.3), Error);
  CHECK_THROWS_AS(grid_cells(0.0), Error);
  CHECK_THROWS_AS(grid_cells(-0.1), Error);
  CHECK_THROWS_AS(grid_cells(1.5), Error);
}

TEST_CASE("grid oracle: single member") {
  const auto in = generate(random_skill_spec(1, 60, 3, 2));
  const auto member_mse = mse(as_prediction(in.member(0)), in.labels());
  for (double step : {1.0, 0.1, 0.02}) {
    const auto r = grid_oracle(in, step);
    CHECK(r.weights.genes() == std::vector<double>{1.0});
    CHECK(r.mse == member_mse);
    CHECK(r.evaluated == 1);
  }
}

TEST_CASE("grid oracle: counts, minimality and limits") {
  const auto in3 = generate(random_skill_spec(3, 200, 4, 7));
  const auto r = grid_oracle(in3, 0.02);
  CHECK(r.evaluated == 1326);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(r.mse <= mse(as_prediction(in3.member(i)), in3.labels()));
  }
  CHECK(grid_oracle(generate(random_skill_spec(2, 30, 3, 1)), 0.5).evaluated == 3);

  try {
    grid_oracle(generate(random_skill_spec(5, 10, 3, 1)), 0.5);
    FAIL("expected TooManyMembers");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::TooManyMembers);
  }
  try {
    grid_oracle(in3, 0.3);
    FAIL("expected BadStep");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BadStep);
  }
}
