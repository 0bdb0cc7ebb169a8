#include "treeparse/treebank.hpp"

#include <algorithm>
#include <cctype>
#include <random>

#include <json.hpp>

#include "treeparse/error.hpp"

namespace treeparse {

namespace {

bool is_numeric_flag(const std::string& label, std::size_t hyphen) {
  if (hyphen + 1 >= label.size()) return false;
  for (std::size_t i = hyphen + 1; i < label.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(label[i]))) return false;
  return true;
}

bool contains(const std::vector<std::string>& flags, const std::string& flag) {
  return std::find(flags.begin(), flags.end(), flag) != flags.end();
}

void edit_node(Tree& node, const FlagConfig& config) {
  if (node.leaf()) return;
  node.label = edit_label(node.label, config);
  for (Tree& child : node.children) edit_node(child, config);
}

}  // namespace

std::string edit_label(const std::string& label, const FlagConfig& config) {
  std::string out = label;
  for (;;) {
    std::size_t hyphen = out.rfind('-');
    if (hyphen == std::string::npos || hyphen == 0) break;  // "-NONE-" stays
    if (is_numeric_flag(out, hyphen)) {
      out.erase(hyphen);
      continue;
    }
    std::string flag = out.substr(hyphen);
    if (contains(config.keep, flag)) break;
    if (contains(config.strip, flag)) {
      out.erase(hyphen);
      continue;
    }
    break;  // unknown flag passes through
  }
  return out;
}

Corpus edit_labels(const Corpus& corpus, const FlagConfig& config) {
  Corpus out = corpus;
  for (Tree& tree : out.trees) edit_node(tree, config);
  return out;
}

Corpus filter_by_length(const Corpus& corpus, int max_leaves) {
  if (max_leaves < 1) throw DataError("max_leaves must be >= 1");
  Corpus out;
  for (const Tree& tree : corpus.trees)
    if (leaf_count(tree) <= max_leaves) out.trees.push_back(tree);
  return out;
}

std::vector<std::vector<int>> FoldSplit::fold_ids() const {
  std::vector<std::vector<int>> folds(fold_count);
  for (std::size_t id = 0; id < assignment.size(); ++id)
    folds[assignment[id]].push_back(static_cast<int>(id));
  return folds;
}

FoldSplit split_folds(std::size_t corpus_size, int fold_count,
                      std::uint64_t seed) {
  if (fold_count < 2) throw DataError("fold_count must be >= 2");
  if (static_cast<std::size_t>(fold_count) > corpus_size)
    throw DataError("fold_count exceeds corpus size (" +
                    std::to_string(fold_count) + " > " +
                    std::to_string(corpus_size) + ")");

  std::vector<int> ids(corpus_size);
  for (std::size_t i = 0; i < corpus_size; ++i) ids[i] = static_cast<int>(i);

  // Hand-rolled Fisher-Yates: std::shuffle's draw sequence is
  // implementation-defined, mt19937_64 is not.
  std::mt19937_64 rng(seed);
  for (std::size_t i = corpus_size - 1; i > 0; --i) {
    std::size_t j = static_cast<std::size_t>(rng() % (i + 1));
    std::swap(ids[i], ids[j]);
  }

  FoldSplit split;
  split.fold_count = fold_count;
  split.seed = seed;
  split.assignment.resize(corpus_size);
  for (std::size_t pos = 0; pos < corpus_size; ++pos)
    split.assignment[ids[pos]] = static_cast<int>(pos % fold_count);
  return split;
}

FoldSplit split_folds(const Corpus& corpus, int fold_count,
                      std::uint64_t seed) {
  return split_folds(corpus.size(), fold_count, seed);
}

std::string fold_split_to_json(const FoldSplit& split) {
  nlohmann::ordered_json j;
  j["fold_count"] = split.fold_count;
  j["seed"] = split.seed;
  j["assignment"] = split.assignment;
  return j.dump();
}

FoldSplit fold_split_from_json(const std::string& json_text) {
  nlohmann::json j = nlohmann::json::parse(json_text);
  FoldSplit split;
  split.fold_count = j.at("fold_count").get<int>();
  split.seed = j.at("seed").get<std::uint64_t>();
  split.assignment = j.at("assignment").get<std::vector<int>>();
  return split;
}

}  // namespace treeparse
