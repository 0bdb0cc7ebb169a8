#pragma once

#include <cstddef>
#include <vector>

#include "treeparse/chart.hpp"
#include "treeparse/grammar.hpp"
#include "treeparse/kbest.hpp"
#include "treeparse/tree.hpp"

namespace treeparse {

// Natural-log probability of a tree: the sum of log rule probabilities
// over internal nodes, folded root-first with children in order. POS-tag
// leaves contribute no factor. Throws CoverageError (naming the rule) if
// a rule instance is absent from the grammar. A bare leaf scores 0.
double tree_log_prob(const Tree& tree, const Grammar& grammar);

// kbest with model tag "pcfg".
std::vector<RankedParse> rank_pcfg(const ParseForest& forest,
                                   const Grammar& grammar, std::size_t limit);

}  // namespace treeparse
