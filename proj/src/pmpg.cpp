#include "treeparse/pmpg.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "treeparse/error.hpp"
#include "treeparse/pcfg.hpp"

namespace treeparse {

namespace {

void collect_subtrees(const Tree& node,
                      std::unordered_map<std::string, std::int64_t>& entries) {
  if (node.leaf()) return;
  ++entries[to_bracketed(node)];
  for (const Tree& child : node.children) collect_subtrees(child, entries);
}

// Assigns pre-order flags while building canonical strings bottom-up.
std::string annotate_node(const Tree& node, const SubtreeIndex& index,
                          std::vector<bool>& flags) {
  if (node.leaf()) return node.label;
  std::size_t slot = flags.size();
  flags.push_back(false);
  std::string canonical = "(" + node.label;
  for (const Tree& child : node.children) {
    canonical += ' ';
    canonical += annotate_node(child, index, flags);
  }
  canonical += ')';
  flags[slot] = index.contains_canonical(canonical);
  return canonical;
}

Tree prune_node(const Tree& node, const std::vector<bool>& flags,
                std::size_t& cursor, int& non_indexed) {
  if (node.leaf()) return node;
  bool retrieved = flags[cursor++];
  if (retrieved) {
    // Maximal retrieved node: descendants (all retrieved by downward
    // closure) collapse into a single constituent-labeled leaf.
    cursor += internal_node_count(node) - 1;
    return Tree(node.label);
  }
  ++non_indexed;
  std::vector<Tree> children;
  children.reserve(node.children.size());
  for (const Tree& child : node.children)
    children.push_back(prune_node(child, flags, cursor, non_indexed));
  return Tree(node.label, std::move(children));
}

}  // namespace

SubtreeIndex SubtreeIndex::build(const Corpus& corpus) {
  if (corpus.empty())
    throw DataError("cannot build a subtree index from an empty corpus");
  SubtreeIndex index;
  for (const Tree& tree : corpus.trees)
    collect_subtrees(tree, index.entries_);
  return index;
}

bool SubtreeIndex::contains(const Tree& subtree) const {
  return contains_canonical(to_bracketed(subtree));
}

bool SubtreeIndex::contains_canonical(const std::string& canonical) const {
  return entries_.find(canonical) != entries_.end();
}

std::int64_t SubtreeIndex::occurrence_count(const Tree& subtree) const {
  auto it = entries_.find(to_bracketed(subtree));
  return it == entries_.end() ? 0 : it->second;
}

std::map<std::string, SubtreeIndex::LabelStats> SubtreeIndex::stats_by_root()
    const {
  std::map<std::string, LabelStats> stats;
  for (const auto& [canonical, count] : entries_) {
    std::size_t space = canonical.find(' ');
    std::string root = canonical.substr(1, space - 1);
    LabelStats& entry = stats[root];
    ++entry.distinct;
    entry.occurrences += count;
  }
  return stats;
}

std::string SubtreeIndex::to_jsonl() const {
  std::vector<std::pair<std::string, std::int64_t>> sorted(entries_.begin(),
                                                           entries_.end());
  std::sort(sorted.begin(), sorted.end());
  std::string out;
  for (const auto& [canonical, count] : sorted) {
    std::size_t space = canonical.find(' ');
    nlohmann::ordered_json j;
    j["root"] = canonical.substr(1, space - 1);
    j["canonical"] = canonical;
    j["count"] = count;
    out += j.dump();
    out += '\n';
  }
  return out;
}

SubtreeIndex SubtreeIndex::from_jsonl(const std::string& text) {
  SubtreeIndex index;
  std::istringstream in(text);
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty() || line[0] == '#') continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw DataError("index line " + std::to_string(line_number) + ": " +
                      e.what());
    }
    index.entries_[j.at("canonical").get<std::string>()] =
        j.at("count").get<std::int64_t>();
  }
  return index;
}

void write_index_file(const SubtreeIndex& index, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write index file: " + path);
  out << index.to_jsonl();
}

SubtreeIndex read_index_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open index file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return SubtreeIndex::from_jsonl(buffer.str());
}

MatchAnnotation annotate(const Tree& tree, const SubtreeIndex& index) {
  MatchAnnotation annotation;
  annotation.tree = tree;
  annotate_node(tree, index, annotation.retrieved);
  return annotation;
}

PrunedTree prune(const MatchAnnotation& annotation) {
  PrunedTree pruned;
  std::size_t cursor = 0;
  pruned.tree = prune_node(annotation.tree, annotation.retrieved, cursor,
                           pruned.non_indexed_count);
  return pruned;
}

PmpgScore pmpg_score(const Tree& tree, const SubtreeIndex& index,
                     const Grammar& grammar) {
  PrunedTree pruned = prune(annotate(tree, index));
  PmpgScore score;
  score.log_prob = tree_log_prob(pruned.tree, grammar);
  score.non_indexed_count = pruned.non_indexed_count;
  return score;
}

std::vector<RankedParse> rank_pmpg(const std::vector<Tree>& candidates,
                                   const SubtreeIndex& index,
                                   const Grammar& grammar,
                                   std::vector<RankWarning>* warnings) {
  struct Scored {
    double log_prob;
    int non_indexed;
    std::string canonical;
    const Tree* tree;
  };
  std::vector<Scored> scored;
  scored.reserve(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    try {
      PmpgScore score = pmpg_score(candidates[i], index, grammar);
      scored.push_back(Scored{score.log_prob, score.non_indexed_count,
                              to_bracketed(candidates[i]), &candidates[i]});
    } catch (const CoverageError& e) {
      if (warnings) warnings->push_back(RankWarning{i, e.what()});
    }
  }
  std::stable_sort(scored.begin(), scored.end(),
                   [](const Scored& a, const Scored& b) {
                     if (a.log_prob != b.log_prob) return a.log_prob > b.log_prob;
                     if (a.non_indexed != b.non_indexed)
                       return a.non_indexed < b.non_indexed;
                     return a.canonical < b.canonical;
                   });
  std::vector<RankedParse> ranked;
  ranked.reserve(scored.size());
  for (const Scored& entry : scored)
    ranked.push_back(RankedParse{*entry.tree, entry.log_prob, "pmpg"});
  return ranked;
}

}  // namespace treeparse
