#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "treeparse/grammar.hpp"
#include "treeparse/kbest.hpp"
#include "treeparse/tree.hpp"

namespace treeparse {

// Every complete subtree (down to POS-tag leaves) rooted at an internal
// node of a training tree, keyed by canonical bracketed form. Membership
// is exact; occurrence counts are kept for diagnostics only.
class SubtreeIndex {
 public:
  SubtreeIndex() = default;

  // Throws DataError on an empty corpus.
  static SubtreeIndex build(const Corpus& corpus);

  bool contains(const Tree& subtree) const;
  bool contains_canonical(const std::string& canonical) const;
  std::int64_t occurrence_count(const Tree& subtree) const;

  std::size_t distinct_count() const { return entries_.size(); }

  struct LabelStats {
    std::int64_t distinct = 0;
    std::int64_t occurrences = 0;
  };
  // Per-root-label subtree statistics, ordered by label.
  std::map<std::string, LabelStats> stats_by_root() const;

  // JSON-lines: {"root": label, "canonical": bracketed, "count": int},
  // sorted by (root, canonical).
  std::string to_jsonl() const;
  static SubtreeIndex from_jsonl(const std::string& text);

 private:
  std::unordered_map<std::string, std::int64_t> entries_;  // canonical -> n
};

void write_index_file(const SubtreeIndex& index, const std::string& path);
SubtreeIndex read_index_file(const std::string& path);

// Per-node retrieval flags for a candidate tree; flags are indexed by
// pre-order position among internal nodes. Retrieval is downward closed:
// an identical complete subtree contains identical complete subtrees.
struct MatchAnnotation {
  Tree tree;
  std::vector<bool> retrieved;
};

// Marks each internal node whose complete subtree is in the index,
// matching bottom-up.
MatchAnnotation annotate(const Tree& tree, const SubtreeIndex& index);

// Tree with every maximal retrieved node replaced by a leaf bearing its
// constituent label. non_indexed_count counts the internal nodes of the
// original tree that were not retrieved.
struct PrunedTree {
  Tree tree;
  int non_indexed_count = 0;
};

PrunedTree prune(const MatchAnnotation& annotation);

struct PmpgScore {
  double log_prob = 0.0;      // of the pruned tree, empty product = 0
  int non_indexed_count = 0;  // primary tie-break: fewer expanding nodes
};

// Scores the pruned remainder of a candidate. Throws CoverageError when
// an expanding node's rule is missing from the grammar.
PmpgScore pmpg_score(const Tree& tree, const SubtreeIndex& index,
                     const Grammar& grammar);

struct RankWarning {
  std::size_t candidate = 0;  // position in the input sequence
  std::string message;
};

// Orders candidates by pmpg score (ties: fewer expanding nodes, then
// canonical form). Candidates with grammar gaps are dropped and reported
// through `warnings` instead of aborting the batch.
std::vector<RankedParse> rank_pmpg(const std::vector<Tree>& candidates,
                                   const SubtreeIndex& index,
                                   const Grammar& grammar,
                                   std::vector<RankWarning>* warnings = nullptr);

}  // namespace treeparse
