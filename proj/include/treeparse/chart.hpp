#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "treeparse/grammar.hpp"
#include "treeparse/tree.hpp"

namespace treeparse {

// One way to rewrite a forest item: the rule applied plus one entry per
// rhs symbol. children[i] >= 0 is a forest item id; children[i] < 0 is a
// POS tag consumed from the input, encoded as -(symbol_id + 1).
struct Derivation {
  int rule_index = -1;
  std::vector<int> children;

  // A unary constituent rewrite (rhs is a single constituent over the
  // same span); these form the chains bounded during tree extraction.
  bool unary_link() const {
    return children.size() == 1 && children.front() >= 0;
  }
};

inline int terminal_symbol(int encoded_child) { return -encoded_child - 1; }

struct ForestItem {
  int label = -1;  // symbol id
  int start = 0;
  int end = 0;
  std::vector<Derivation> derivations;
};

// Packed AND/OR forest of every parse of a tag sequence. Items are keyed
// by (label, start, end); same-span unary derivations may form cycles,
// which every reader bounds by forbidding a repeated label within a
// unary chain.
class ParseForest {
 public:
  ParseForest(std::vector<std::string> symbols, std::vector<std::string> tags,
              std::vector<ForestItem> items, std::vector<int> roots)
      : symbols_(std::move(symbols)),
        tags_(std::move(tags)),
        items_(std::move(items)),
        roots_(std::move(roots)) {}

  const std::vector<ForestItem>& items() const { return items_; }
  const std::vector<int>& roots() const { return roots_; }
  const std::vector<std::string>& tags() const { return tags_; }
  const std::string& symbol_name(int id) const { return symbols_[id]; }

 private:
  std::vector<std::string> symbols_;  // grammar symbol table snapshot
  std::vector<std::string> tags_;
  std::vector<ForestItem> items_;
  std::vector<int> roots_;
};

// Bottom-up chart parse with dotted edges over n-ary rules, CKY order
// over the right boundary. Returns nullopt when no complete parse with a
// root label in start_symbols exists (Unparsable).
std::optional<ParseForest> parse(const std::vector<std::string>& tags,
                                 const Grammar& grammar,
                                 const std::vector<std::string>& start_symbols);

struct ParseCount {
  std::uint64_t value = 0;
  bool saturated = false;  // true once the count hit 2^63 - 1
};

// Number of distinct complete trees in the forest.
ParseCount count_parses(const ParseForest& forest);

// Every complete tree, in a deterministic derivation order.
std::vector<Tree> enumerate_trees(const ParseForest& forest);

// Debug dump; not a stability-guaranteed format.
std::string forest_to_json(const ParseForest& forest, const Grammar& grammar);

}  // namespace treeparse
