#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ensemble_forge/types.hpp"

namespace ensemble_forge {

/// Synthetic ensemble description.
///
/// For a sample of true class c, member i aims its output at c with
/// probability skill[i][c], otherwise at a uniformly chosen wrong class.
/// The aimed-at class gets raw mass concentration * (0.5 + 0.5 u) and every
/// other class gets jitter in (0, 1]; the row is then normalized. Larger
/// concentration gives sharper, more confident rows.
///
/// Draw order per sample is fixed: label, then for each member a skill coin,
/// a wrong-class index, the peak variate and one jitter per class, all drawn
/// whether or not they end up used.
struct SynthSpec {
  std::size_t n_members = 1;
  std::size_t n_samples = 1;
  std::size_t n_classes = 2;
  /// n_members x n_classes.
  std::vector<std::vector<double>> skill;
  double concentration = 8.0;
  std::uint64_t rng_seed = 0;

  /// Throws SpecInvalid.
  void validate() const;
};

/// Labels uniform over classes; members named member_0..member_{N-1}.
EnsembleInput generate(const SynthSpec& spec);

/// Skill entries drawn uniformly from [0, 1] with a stream derived from `seed`.
SynthSpec random_skill_spec(std::size_t n_members, std::size_t n_samples, std::size_t n_classes,
                            std::uint64_t seed, double concentration = 8.0);

/// Classes split into contiguous blocks, one per member; member i has
/// `expert_skill` on its own block and `base_skill` elsewhere.
SynthSpec block_specialists_spec(std::size_t n_members, std::size_t n_samples, std::size_t n_classes,
                                 std::uint64_t seed, double expert_skill = 0.95, double base_skill = 0.3,
                                 double concentration = 8.0);

}  // namespace ensemble_forge
