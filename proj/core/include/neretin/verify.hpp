#ifndef NERETIN_VERIFY_HPP
#define NERETIN_VERIFY_HPP

#include <random>
#include <string>
#include <vector>

#include "neretin/measure.hpp"

namespace neretin::verify {

struct CheckResult {
  std::string id;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

/// Runs one numbered acceptance check (1..9).
CheckResult run_criterion(int number, const Config& cfg = default_config());

/// Leaf-set and refinement properties (supplementary, category "tree").
CheckResult run_tree_properties(const Config& cfg = default_config());

/// Category: one of all, perm, tree, element, level, measure.
std::vector<CheckResult> run_category(const std::string& category,
                                      const Config& cfg = default_config());

/// Seeded random element with a random tree-pair diagram; optionally with
/// nontrivial finite-state tails.
aa::AlmostAuto random_almost_auto(std::mt19937_64& rng, const tree::Signature& sig,
                                  int max_depth, bool with_tails,
                                  const Config& cfg = default_config());

/// Seeded random level-preserving element on the depth-n leaves.
aa::AlmostAuto random_level_preserving(std::mt19937_64& rng, const level::LevelContext& ctx,
                                       bool with_tails);

/// A three-state pool machine: identity, the adding machine, one scrambled row.
aa::TailMachine tail_pool(int d, std::mt19937_64& rng);

} // namespace neretin::verify

#endif
