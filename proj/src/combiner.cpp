#include "treeparse/combiner.hpp"

#include <algorithm>
#include <cmath>

#include "treeparse/pcfg.hpp"

namespace treeparse {

double combined_score(const Tree& tree, const Grammar& grammar,
                      const SubtreeIndex& index, double weight_n,
                      bool pruned_numerator) {
  PrunedTree pruned = prune(annotate(tree, index));
  double numerator = pruned_numerator ? tree_log_prob(pruned.tree, grammar)
                                      : tree_log_prob(tree, grammar);
  double denominator =
      std::log(static_cast<double>(std::max(1, pruned.non_indexed_count)));
  return numerator - weight_n * denominator;
}

std::vector<RankedParse> rank_combined(const ParseForest& forest,
                                       const Grammar& grammar,
                                       const SubtreeIndex& index,
                                       const CombinerConfig& config) {
  std::vector<RankedParse> proposals = kbest(forest, grammar, config.top_n);

  struct Scored {
    double combined;
    double pcfg;
    std::string canonical;
    std::size_t origin;
  };
  std::vector<Scored> scored;
  scored.reserve(proposals.size());
  for (std::size_t i = 0; i < proposals.size(); ++i) {
    double score = combined_score(proposals[i].tree, grammar, index,
                                  config.weight_n, config.pruned_numerator);
    scored.push_back(Scored{score, proposals[i].score,
                            to_bracketed(proposals[i].tree), i});
  }
  std::stable_sort(scored.begin(), scored.end(),
                   [](const Scored& a, const Scored& b) {
                     if (a.combined != b.combined) return a.combined > b.combined;
                     if (a.pcfg != b.pcfg) return a.pcfg > b.pcfg;
                     return a.canonical < b.canonical;
                   });

  std::vector<RankedParse> ranked;
  ranked.reserve(scored.size());
  for (const Scored& entry : scored)
    ranked.push_back(RankedParse{std::move(proposals[entry.origin].tree),
                                 entry.combined, "combined"});
  return ranked;
}

}  // namespace treeparse
