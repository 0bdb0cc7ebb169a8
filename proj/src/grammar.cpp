#include "treeparse/grammar.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "treeparse/error.hpp"

namespace treeparse {

namespace {

// Lookup key for a rule over interned ids; '\x1f' cannot occur in labels
// read from whitespace-tokenized input.
std::string rule_key(int lhs, const std::vector<int>& rhs) {
  std::string key = std::to_string(lhs);
  for (int id : rhs) {
    key += '\x1f';
    key += std::to_string(id);
  }
  return key;
}

void count_rules(const Tree& node,
                 std::map<std::pair<std::string, std::vector<std::string>>,
                          std::int64_t>& counts) {
  if (node.leaf()) return;
  std::vector<std::string> rhs;
  rhs.reserve(node.children.size());
  for (const Tree& child : node.children) rhs.push_back(child.label);
  ++counts[{node.label, std::move(rhs)}];
  for (const Tree& child : node.children) count_rules(child, counts);
}

}  // namespace

std::string rule_to_string(const Rule& rule) {
  std::string out = rule.lhs + " ->";
  for (const std::string& symbol : rule.rhs) {
    out += ' ';
    out += symbol;
  }
  return out;
}

std::optional<int> Grammar::symbol_id(const std::string& label) const {
  auto it = symbol_ids_.find(label);
  if (it == symbol_ids_.end()) return std::nullopt;
  return it->second;
}

int Grammar::intern(const std::string& label) {
  auto it = symbol_ids_.find(label);
  if (it != symbol_ids_.end()) return it->second;
  int id = static_cast<int>(symbols_.size());
  symbols_.push_back(label);
  symbol_ids_.emplace(label, id);
  return id;
}

std::optional<int> Grammar::find_rule(int lhs,
                                      const std::vector<int>& rhs) const {
  auto it = rule_lookup_.find(rule_key(lhs, rhs));
  if (it == rule_lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> Grammar::find_rule(const Rule& rule) const {
  auto lhs = symbol_id(rule.lhs);
  if (!lhs) return std::nullopt;
  std::vector<int> rhs;
  rhs.reserve(rule.rhs.size());
  for (const std::string& symbol : rule.rhs) {
    auto id = symbol_id(symbol);
    if (!id) return std::nullopt;
    rhs.push_back(*id);
  }
  return find_rule(*lhs, rhs);
}

std::int64_t Grammar::lhs_total(int lhs_id) const {
  return lhs_totals_[lhs_id];
}

double Grammar::prob(int rule_index) const {
  const RuleEntry& entry = rules_[rule_index];
  return static_cast<double>(entry.count) /
         static_cast<double>(lhs_totals_[entry.lhs]);
}

Rule Grammar::rule_at(int rule_index) const {
  const RuleEntry& entry = rules_[rule_index];
  Rule rule;
  rule.lhs = symbols_[entry.lhs];
  rule.rhs.reserve(entry.rhs.size());
  for (int id : entry.rhs) rule.rhs.push_back(symbols_[id]);
  return rule;
}

std::string Grammar::rule_string(int rule_index) const {
  return rule_to_string(rule_at(rule_index));
}

const std::vector<int>& Grammar::rules_with_first(int symbol_id) const {
  if (symbol_id < 0 || symbol_id >= static_cast<int>(rules_by_first_.size()))
    return no_rules_;
  return rules_by_first_[symbol_id];
}

Grammar Grammar::from_counts(
    const std::vector<std::pair<Rule, std::int64_t>>& counted_rules) {
  // Canonical order: by lhs label, then rhs labels; duplicates merge.
  std::map<std::pair<std::string, std::vector<std::string>>, std::int64_t>
      merged;
  for (const auto& [rule, count] : counted_rules) {
    if (rule.rhs.empty()) throw DataError("rule with empty rhs: " + rule.lhs);
    if (rule.rhs.size() > 255)
      throw DataError("rule rhs too long: " + rule.lhs);
    if (count < 1)
      throw DataError("rule with non-positive count: " + rule_to_string(rule));
    merged[{rule.lhs, rule.rhs}] += count;
  }

  Grammar grammar;
  for (const auto& [key, count] : merged) {
    RuleEntry entry;
    entry.lhs = grammar.intern(key.first);
    entry.rhs.reserve(key.second.size());
    for (const std::string& symbol : key.second)
      entry.rhs.push_back(grammar.intern(symbol));
    entry.count = count;
    grammar.rules_.push_back(std::move(entry));
  }
  grammar.finalize();
  return grammar;
}

void Grammar::finalize() {
  lhs_totals_.assign(symbols_.size(), 0);
  for (const RuleEntry& entry : rules_) lhs_totals_[entry.lhs] += entry.count;

  rule_lookup_.clear();
  log_probs_.resize(rules_.size());
  rules_by_first_.assign(symbols_.size(), {});
  for (std::size_t i = 0; i < rules_.size(); ++i) {
    const RuleEntry& entry = rules_[i];
    rule_lookup_.emplace(rule_key(entry.lhs, entry.rhs), static_cast<int>(i));
    log_probs_[i] = std::log(static_cast<double>(entry.count)) -
                    std::log(static_cast<double>(lhs_totals_[entry.lhs]));
    rules_by_first_[entry.rhs.front()].push_back(static_cast<int>(i));
  }
}

Grammar induce(const Corpus& corpus) {
  if (corpus.empty()) throw DataError("cannot induce a grammar from an empty corpus");
  std::map<std::pair<std::string, std::vector<std::string>>, std::int64_t>
      counts;
  for (const Tree& tree : corpus.trees) count_rules(tree, counts);
  std::vector<std::pair<Rule, std::int64_t>> counted;
  counted.reserve(counts.size());
  for (const auto& [key, count] : counts)
    counted.push_back({Rule{key.first, key.second}, count});
  return Grammar::from_counts(counted);
}

std::vector<TreeCoverage> coverage(const Grammar& grammar,
                                   const Corpus& corpus) {
  std::vector<TreeCoverage> report;
  report.reserve(corpus.size());
  for (std::size_t id = 0; id < corpus.size(); ++id) {
    TreeCoverage entry;
    entry.tree_id = static_cast<int>(id);
    auto walk = [&](const Tree& node, auto&& self) -> void {
      if (node.leaf()) return;
      Rule rule;
      rule.lhs = node.label;
      for (const Tree& child : node.children) rule.rhs.push_back(child.label);
      if (!grammar.find_rule(rule) &&
          std::find(entry.missing.begin(), entry.missing.end(), rule) ==
              entry.missing.end())
        entry.missing.push_back(std::move(rule));
      for (const Tree& child : node.children) self(child, self);
    };
    walk(corpus.trees[id], walk);
    report.push_back(std::move(entry));
  }
  return report;
}

std::string grammar_to_jsonl(const Grammar& grammar) {
  std::string out;
  for (std::size_t i = 0; i < grammar.rule_count(); ++i) {
    Rule rule = grammar.rule_at(static_cast<int>(i));
    nlohmann::ordered_json j;
    j["lhs"] = rule.lhs;
    j["rhs"] = rule.rhs;
    j["count"] = grammar.rules()[i].count;
    j["prob"] = grammar.prob(static_cast<int>(i));
    out += j.dump();
    out += '\n';
  }
  return out;
}

Grammar grammar_from_jsonl(const std::string& text) {
  std::vector<std::pair<Rule, std::int64_t>> counted;
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
      throw DataError("grammar line " + std::to_string(line_number) +
                      ": " + e.what());
    }
    Rule rule;
    rule.lhs = j.at("lhs").get<std::string>();
    rule.rhs = j.at("rhs").get<std::vector<std::string>>();
    counted.push_back({std::move(rule), j.at("count").get<std::int64_t>()});
  }
  if (counted.empty()) throw DataError("grammar file contains no rules");
  return Grammar::from_counts(counted);
}

void write_grammar_file(const Grammar& grammar, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write grammar file: " + path);
  out << grammar_to_jsonl(grammar);
}

Grammar read_grammar_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open grammar file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return grammar_from_jsonl(buffer.str());
}

}  // namespace treeparse
