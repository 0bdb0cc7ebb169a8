#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "treeparse/tree.hpp"

namespace treeparse {

// One n-ary rewrite rule, string form (for reporting and file I/O).
struct Rule {
  std::string lhs;
  std::vector<std::string> rhs;

  bool operator==(const Rule& other) const = default;
};

std::string rule_to_string(const Rule& rule);  // "S -> NP VP"

// Treebank grammar: n-ary rules with occurrence counts. Probabilities
// are relative frequencies per lhs, computed from exact integer counts.
// Immutable once built; symbol ids intern every label seen.
class Grammar {
 public:
  struct RuleEntry {
    int lhs = -1;
    std::vector<int> rhs;
    std::int64_t count = 0;
  };

  const std::vector<RuleEntry>& rules() const { return rules_; }
  std::size_t rule_count() const { return rules_.size(); }
  std::size_t symbol_count() const { return symbols_.size(); }

  const std::string& symbol_name(int id) const { return symbols_[id]; }
  std::optional<int> symbol_id(const std::string& label) const;

  std::optional<int> find_rule(int lhs, const std::vector<int>& rhs) const;
  std::optional<int> find_rule(const Rule& rule) const;

  std::int64_t lhs_total(int lhs_id) const;
  double prob(int rule_index) const;
  double log_prob(int rule_index) const { return log_probs_[rule_index]; }

  Rule rule_at(int rule_index) const;
  std::string rule_string(int rule_index) const;

  // Rule indices whose rhs starts with the given symbol (chart seeding).
  const std::vector<int>& rules_with_first(int symbol_id) const;

  // Builds a grammar from accumulated (rule, count) pairs; rules are
  // canonically ordered by label strings so output files are stable.
  static Grammar from_counts(
      const std::vector<std::pair<Rule, std::int64_t>>& counted_rules);

 private:
  int intern(const std::string& label);
  void finalize();

  std::vector<std::string> symbols_;
  std::unordered_map<std::string, int> symbol_ids_;
  std::vector<RuleEntry> rules_;
  std::unordered_map<std::string, int> rule_lookup_;  // packed key -> index
  std::vector<std::int64_t> lhs_totals_;              // by symbol id
  std::vector<double> log_probs_;
  std::vector<std::vector<int>> rules_by_first_;
  std::vector<int> no_rules_;
};

// Counts one rule instance per internal node across the corpus.
// Throws DataError on an empty corpus.
Grammar induce(const Corpus& corpus);

// Rules used by each tree that are absent from the grammar.
struct TreeCoverage {
  int tree_id = 0;
  std::vector<Rule> missing;

  bool covered() const { return missing.empty(); }
};

std::vector<TreeCoverage> coverage(const Grammar& grammar,
                                   const Corpus& corpus);

// JSON-lines: {"lhs": str, "rhs": [str], "count": int, "prob": float}.
// Probabilities are advisory on read; counts are authoritative.
std::string grammar_to_jsonl(const Grammar& grammar);
Grammar grammar_from_jsonl(const std::string& text);
void write_grammar_file(const Grammar& grammar, const std::string& path);
Grammar read_grammar_file(const std::string& path);

}  // namespace treeparse
