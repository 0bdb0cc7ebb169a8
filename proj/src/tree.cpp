#include "treeparse/tree.hpp"

#include <fstream>
#include <sstream>

#include "treeparse/error.hpp"

namespace treeparse {

namespace {

void append_bracketed(const Tree& tree, std::string& out) {
  if (tree.leaf()) {
    out += tree.label;
    return;
  }
  out += '(';
  out += tree.label;
  for (const Tree& child : tree.children) {
    out += ' ';
    append_bracketed(child, out);
  }
  out += ')';
}

struct LineParser {
  const std::string& text;
  int line;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what, line, static_cast<int>(pos) + 1);
  }

  void skip_spaces() {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  }

  bool at_end() {
    skip_spaces();
    return pos >= text.size();
  }

  std::string token() {
    std::size_t begin = pos;
    while (pos < text.size() && text[pos] != '(' && text[pos] != ')' &&
           text[pos] != ' ' && text[pos] != '\t')
      ++pos;
    return text.substr(begin, pos - begin);
  }

  Tree node() {
    skip_spaces();
    if (pos >= text.size() || text[pos] != '(') fail("expected '('");
    ++pos;
    skip_spaces();
    std::string label = token();
    if (label.empty()) fail("empty node label");
    Tree tree(std::move(label));
    for (;;) {
      skip_spaces();
      if (pos >= text.size()) fail("unbalanced parentheses: missing ')'");
      char c = text[pos];
      if (c == ')') {
        ++pos;
        break;
      }
      if (c == '(') {
        tree.children.push_back(node());
      } else {
        tree.children.emplace_back(token());
      }
    }
    if (tree.children.empty()) fail("node '" + tree.label + "' has no children");
    return tree;
  }

  Tree single_tree() {
    Tree tree = node();
    if (!at_end()) fail("trailing content after tree");
    return tree;
  }
};

}  // namespace

std::string to_bracketed(const Tree& tree) {
  std::string out;
  append_bracketed(tree, out);
  return out;
}

std::string serialize_bracketed(const Corpus& corpus) {
  std::string out;
  for (const Tree& tree : corpus.trees) {
    append_bracketed(tree, out);
    out += '\n';
  }
  return out;
}

Corpus parse_bracketed(const std::string& text) {
  Corpus corpus;
  std::istringstream in(text);
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    LineParser parser{line, line_number};
    if (parser.at_end()) continue;
    if (line[parser.pos] == '#') continue;
    corpus.trees.push_back(parser.single_tree());
  }
  return corpus;
}

Tree parse_tree(const std::string& text) {
  LineParser parser{text, 1};
  return parser.single_tree();
}

Corpus read_treebank_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open treebank file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_bracketed(buffer.str());
}

void write_treebank_file(const Corpus& corpus, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write treebank file: " + path);
  out << serialize_bracketed(corpus);
}

int leaf_count(const Tree& tree) {
  if (tree.leaf()) return 1;
  int n = 0;
  for (const Tree& child : tree.children) n += leaf_count(child);
  return n;
}

std::vector<std::string> leaves(const Tree& tree) {
  std::vector<std::string> out;
  auto walk = [&out](const Tree& node, auto&& self) -> void {
    if (node.leaf()) {
      out.push_back(node.label);
      return;
    }
    for (const Tree& child : node.children) self(child, self);
  };
  walk(tree, walk);
  return out;
}

int internal_node_count(const Tree& tree) {
  if (tree.leaf()) return 0;
  int n = 1;
  for (const Tree& child : tree.children) n += internal_node_count(child);
  return n;
}

}  // namespace treeparse
