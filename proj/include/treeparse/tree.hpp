#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace treeparse {

// Labeled ordered tree. Leaves carry POS tags, internal nodes carry
// constituent labels. A node with no children is a leaf.
struct Tree {
  std::string label;
  std::vector<Tree> children;

  Tree() = default;
  explicit Tree(std::string l) : label(std::move(l)) {}
  Tree(std::string l, std::vector<Tree> c)
      : label(std::move(l)), children(std::move(c)) {}

  bool leaf() const { return children.empty(); }

  bool operator==(const Tree& other) const = default;
};

// Ordered sequence of trees; a tree's id is its position.
struct Corpus {
  std::vector<Tree> trees;

  std::size_t size() const { return trees.size(); }
  bool empty() const { return trees.empty(); }

  bool operator==(const Corpus& other) const = default;
};

// Canonical bracketed form: "(S (NP-SBJ prp) (VP vbp))".
// A bare leaf serializes to its label alone.
std::string to_bracketed(const Tree& tree);

// One tree per line, canonical whitespace.
std::string serialize_bracketed(const Corpus& corpus);

// Parses whitespace-separated bracketed trees, one per line. Blank lines
// and '#'-prefixed comment lines are skipped. Throws ParseError with
// 1-based line/column on malformed input.
Corpus parse_bracketed(const std::string& text);

// Parses a single bracketed tree (no trailing content allowed).
Tree parse_tree(const std::string& text);

Corpus read_treebank_file(const std::string& path);
void write_treebank_file(const Corpus& corpus, const std::string& path);

int leaf_count(const Tree& tree);
std::vector<std::string> leaves(const Tree& tree);
int internal_node_count(const Tree& tree);

}  // namespace treeparse
