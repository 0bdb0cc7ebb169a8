#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "treeparse/chart.hpp"
#include "treeparse/grammar.hpp"
#include "treeparse/tree.hpp"

namespace treeparse {

struct RankedParse {
  Tree tree;
  double score = 0.0;  // natural-log probability under the scoring model
  std::string model;
};

// Exact k-best trees by PCFG log-probability, best first. Lazy best-first
// extraction over the packed forest; candidates with equal score are
// ordered by their bracketed serialization, so output is deterministic.
// Returns min(k, total parses) distinct trees. Every reported score
// equals pcfg tree_log_prob of the reported tree bit-for-bit.
std::vector<RankedParse> kbest(const ParseForest& forest,
                               const Grammar& grammar, std::size_t k);

}  // namespace treeparse
