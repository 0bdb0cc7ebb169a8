#include "treeparse/pcfg.hpp"

#include "treeparse/error.hpp"

namespace treeparse {

double tree_log_prob(const Tree& tree, const Grammar& grammar) {
  if (tree.leaf()) return 0.0;
  Rule rule;
  rule.lhs = tree.label;
  rule.rhs.reserve(tree.children.size());
  for (const Tree& child : tree.children) rule.rhs.push_back(child.label);
  auto index = grammar.find_rule(rule);
  if (!index)
    throw CoverageError("rule not in grammar", rule_to_string(rule));
  double score = grammar.log_prob(*index);
  for (const Tree& child : tree.children)
    if (!child.leaf()) score += tree_log_prob(child, grammar);
  return score;
}

std::vector<RankedParse> rank_pcfg(const ParseForest& forest,
                                   const Grammar& grammar,
                                   std::size_t limit) {
  return kbest(forest, grammar, limit);
}

}  // namespace treeparse
