#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "treeparse/tree.hpp"

namespace treeparse {

// Label-editing configuration. Flags are hyphen-prefixed suffixes
// ("-TMP"). Numeric flags ("-2") are always stripped. A label whose
// final flag is in `keep` is left untouched from that point on.
struct FlagConfig {
  std::vector<std::string> strip = {"-TMP", "-DIR"};
  std::vector<std::string> keep = {"-SBJ"};
};

// Strips flags from a single constituent label.
std::string edit_label(const std::string& label, const FlagConfig& config);

// Applies edit_label to every internal-node label; leaves are untouched.
Corpus edit_labels(const Corpus& corpus, const FlagConfig& config = {});

// Retains trees with leaf_count <= max_leaves, preserving order.
Corpus filter_by_length(const Corpus& corpus, int max_leaves);

inline constexpr int kDefaultMaxLeaves = 15;
inline constexpr std::uint64_t kDefaultSeed = 42;

struct FoldSplit {
  int fold_count = 0;
  std::uint64_t seed = 0;
  std::vector<int> assignment;  // tree id -> fold index

  std::vector<std::vector<int>> fold_ids() const;
};

// Seeded shuffle of ids followed by round-robin assignment; fold sizes
// differ by at most one. Deterministic across platforms for a given
// (corpus size, fold_count, seed).
FoldSplit split_folds(std::size_t corpus_size, int fold_count,
                      std::uint64_t seed = kDefaultSeed);
FoldSplit split_folds(const Corpus& corpus, int fold_count,
                      std::uint64_t seed = kDefaultSeed);

std::string fold_split_to_json(const FoldSplit& split);
FoldSplit fold_split_from_json(const std::string& json_text);

}  // namespace treeparse
