#pragma once

#include <atomic>
#include <filesystem>
#include <random>
#include <string>
#include <unistd.h>

#include "ensemble_forge/fusion.hpp"
#include "ensemble_forge/types.hpp"

namespace ensemble_forge::test {

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("ensemble_forge_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

/// Random row-stochastic matrix; some rows get exact zeros.
inline Matrix random_stochastic(std::mt19937_64& gen, std::size_t rows, std::size_t cols) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    double sum = 0.0;
    for (std::size_t c = 0; c < cols; ++c) {
      m(r, c) = (gen() % 7 == 0) ? 0.0 : u(gen);
      sum += m(r, c);
    }
    if (sum == 0.0) {
      m(r, 0) = 1.0;
      sum = 1.0;
    }
    for (std::size_t c = 0; c < cols; ++c) m(r, c) /= sum;
  }
  return m;
}

inline EnsembleInput random_ensemble(std::mt19937_64& gen, std::size_t n, std::size_t samples,
                                     std::size_t classes) {
  std::vector<PredictionMatrix> members;
  for (std::size_t i = 0; i < n; ++i) {
    members.push_back(validate_prediction_matrix(random_stochastic(gen, samples, classes), "m" + std::to_string(i)));
  }
  std::vector<std::size_t> labels(samples);
  for (auto& l : labels) l = gen() % classes;
  return EnsembleInput::make(std::move(members), LabelVector(std::move(labels)));
}

}  // namespace ensemble_forge::test
