#pragma once

#include <cstddef>
#include <vector>

#include "treeparse/chart.hpp"
#include "treeparse/grammar.hpp"
#include "treeparse/kbest.hpp"
#include "treeparse/pmpg.hpp"
#include "treeparse/tree.hpp"

namespace treeparse {

struct CombinerConfig {
  std::size_t top_n = 10;
  double weight_n = 1.0;
  // Alternative reading of the combination formula: score the pruned
  // remainder instead of the full tree in the numerator. Off by default.
  bool pruned_numerator = false;
};

// log [ product of rule probabilities ] - weight_n * log(max(1, c)),
// where c is the candidate's non-indexed node count. The guard keeps the
// score finite for fully retrieved trees (c = 0).
double combined_score(const Tree& tree, const Grammar& grammar,
                      const SubtreeIndex& index, double weight_n,
                      bool pruned_numerator = false);

// PCFG proposes the top_n most probable parses; each is rescored with
// combined_score and the list is reordered (ties: higher PCFG score,
// then canonical form). Model tag "combined".
std::vector<RankedParse> rank_combined(const ParseForest& forest,
                                       const Grammar& grammar,
                                       const SubtreeIndex& index,
                                       const CombinerConfig& config);

}  // namespace treeparse
