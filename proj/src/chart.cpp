#include "treeparse/chart.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include <json.hpp>

#include "treeparse/error.hpp"

namespace treeparse {

namespace {

struct Traversal {
  int prev = -1;   // active edge id, or -1 at dot position 1
  int child = -1;  // item id, or -1 for a consumed input tag
};

struct ActiveEdge {
  int rule = -1;
  int dot = 0;
  int start = 0;
  int end = 0;
  std::vector<Traversal> traversals;
};

// Packed keys: rule < 2^24, dot < 2^8, positions < 2^16 (checked in parse).
std::uint64_t active_key(int rule, int dot, int start, int end) {
  return (static_cast<std::uint64_t>(rule) << 40) |
         (static_cast<std::uint64_t>(dot) << 32) |
         (static_cast<std::uint64_t>(start) << 16) |
         static_cast<std::uint64_t>(end);
}

std::uint64_t item_key(int label, int start, int end) {
  return (static_cast<std::uint64_t>(label) << 32) |
         (static_cast<std::uint64_t>(start) << 16) |
         static_cast<std::uint64_t>(end);
}

class ChartBuilder {
 public:
  ChartBuilder(const std::vector<int>& tag_ids, const Grammar& grammar)
      : tags_(tag_ids), grammar_(grammar), n_(tag_ids.size()) {
    waiting_.resize(n_ + 1);
  }

  void run() {
    for (int j = 1; j <= static_cast<int>(n_); ++j) {
      extend_over_tag(j);
      while (agenda_pos_ < agenda_.size()) {
        int item_id = agenda_[agenda_pos_++];
        propagate_item(item_id, j);
      }
      agenda_.clear();
      agenda_pos_ = 0;
    }
  }

  std::vector<ForestItem> take_items() { return std::move(items_); }

  int find_item(int label, int start, int end) const {
    auto it = item_ids_.find(item_key(label, start, end));
    return it == item_ids_.end() ? -1 : it->second;
  }

 private:
  // Boundary j, step A: consume the tag at position j-1, both as the
  // first symbol of a rule and as the expected symbol of a waiting edge.
  void extend_over_tag(int j) {
    int tag = tags_[j - 1];
    if (tag < 0) return;  // tag unseen in training: nothing can cover it
    for (int rule : grammar_.rules_with_first(tag))
      advance(-1, -1, rule, 1, j - 1, j);
    auto it = waiting_[j - 1].find(tag);
    if (it != waiting_[j - 1].end())
      for (int active : it->second) {
        // Copy fields: advance() may reallocate actives_.
        ActiveEdge edge = actives_[active];
        advance(active, -1, edge.rule, edge.dot + 1, edge.start, j);
      }
  }

  // Boundary j, step B: a finished item extends edges waiting at its
  // start position and seeds rules whose rhs begins with its label.
  void propagate_item(int item_id, int j) {
    const int label = items_[item_id].label;
    const int start = items_[item_id].start;
    auto it = waiting_[start].find(label);
    if (it != waiting_[start].end()) {
      // start < j, so this waiting list is final; advance() only appends
      // to waiting_[j].
      for (std::size_t i = 0; i < it->second.size(); ++i) {
        int active = it->second[i];
        ActiveEdge edge = actives_[active];
        advance(active, item_id, edge.rule, edge.dot + 1, edge.start, j);
      }
    }
    for (int rule : grammar_.rules_with_first(label))
      advance(-1, item_id, rule, 1, start, j);
  }

  void advance(int prev, int child, int rule, int dot, int start, int end) {
    auto [it, created] =
        active_ids_.try_emplace(active_key(rule, dot, start, end),
                                static_cast<int>(actives_.size()));
    int active = it->second;
    if (created) {
      actives_.push_back({rule, dot, start, end, {}});
      path_memo_.emplace_back();
      const auto& rhs = grammar_.rules()[rule].rhs;
      if (dot < static_cast<int>(rhs.size()))
        waiting_[end][rhs[dot]].push_back(active);
    }
    actives_[active].traversals.push_back({prev, child});
    const auto& rhs = grammar_.rules()[rule].rhs;
    if (dot == static_cast<int>(rhs.size()))
      complete(active, actives_[active].traversals.back());
  }

  // A full dot reached via one new traversal: materialize every child
  // sequence that ends with it. Predecessor edges end strictly earlier,
  // so their traversal sets (and path memos) are final.
  void complete(int active, const Traversal& last) {
    const ActiveEdge& edge = actives_[active];
    int lhs = grammar_.rules()[edge.rule].lhs;
    int item = get_or_create_item(lhs, edge.start, edge.end);
    if (last.prev < 0) {
      items_[item].derivations.push_back({edge.rule, {last.child}});
      return;
    }
    for (const std::vector<int>& prefix : paths(last.prev)) {
      Derivation derivation;
      derivation.rule_index = edge.rule;
      derivation.children = prefix;
      derivation.children.push_back(last.child);
      items_[item].derivations.push_back(std::move(derivation));
    }
  }

  const std::vector<std::vector<int>>& paths(int active) {
    if (path_memo_[active]) return *path_memo_[active];
    std::vector<std::vector<int>> result;
    for (const Traversal& t : actives_[active].traversals) {
      if (t.prev < 0) {
        result.push_back({t.child});
        continue;
      }
      for (const std::vector<int>& prefix : paths(t.prev)) {
        std::vector<int> seq = prefix;
        seq.push_back(t.child);
        result.push_back(std::move(seq));
      }
    }
    path_memo_[active] = std::move(result);
    return *path_memo_[active];
  }

  int get_or_create_item(int label, int start, int end) {
    auto [it, created] = item_ids_.try_emplace(item_key(label, start, end),
                                               static_cast<int>(items_.size()));
    if (created) {
      items_.push_back({label, start, end, {}});
      agenda_.push_back(it->second);
    }
    return it->second;
  }

  const std::vector<int>& tags_;
  const Grammar& grammar_;
  std::size_t n_;

  std::vector<ForestItem> items_;
  std::unordered_map<std::uint64_t, int> item_ids_;
  std::vector<ActiveEdge> actives_;
  std::unordered_map<std::uint64_t, int> active_ids_;
  std::vector<std::optional<std::vector<std::vector<int>>>> path_memo_;
  std::vector<std::unordered_map<int, std::vector<int>>> waiting_;
  std::vector<int> agenda_;
  std::size_t agenda_pos_ = 0;
};

// Encoded child -> leaf or subtree reader helpers live in TreeReader.
class TreeReader {
 public:
  TreeReader(const ParseForest& forest) : forest_(forest) {}

  std::vector<Tree> all() {
    std::vector<Tree> out;
    for (int root : forest_.roots()) {
      std::vector<Tree> trees = read(root, {root});
      out.insert(out.end(), std::make_move_iterator(trees.begin()),
                 std::make_move_iterator(trees.end()));
    }
    return out;
  }

 private:
  std::vector<Tree> read(int item_id, std::vector<int> chain) {
    const ForestItem& item = forest_.items()[item_id];
    const std::string& label = forest_.symbol_name(item.label);
    std::vector<Tree> out;
    for (const Derivation& d : item.derivations) {
      if (d.unary_link()) {
        int child = d.children.front();
        if (std::find(chain.begin(), chain.end(), child) != chain.end())
          continue;  // a label may not repeat within a unary chain
        std::vector<int> extended = chain;
        extended.push_back(child);
        for (Tree& sub : read(child, std::move(extended)))
          out.push_back(Tree(label, {std::move(sub)}));
        continue;
      }
      // Cross product of child alternatives, rightmost varying fastest.
      std::vector<std::vector<Tree>> slots(d.children.size());
      bool viable = true;
      for (std::size_t i = 0; i < d.children.size(); ++i) {
        int child = d.children[i];
        if (child < 0) {
          slots[i].push_back(Tree(forest_.symbol_name(terminal_symbol(child))));
        } else {
          slots[i] = read(child, {child});
          if (slots[i].empty()) viable = false;
        }
      }
      if (!viable) continue;
      std::vector<std::size_t> pick(slots.size(), 0);
      for (;;) {
        std::vector<Tree> children;
        children.reserve(slots.size());
        for (std::size_t i = 0; i < slots.size(); ++i)
          children.push_back(slots[i][pick[i]]);
        out.push_back(Tree(label, std::move(children)));
        std::size_t i = slots.size();
        while (i > 0) {
          --i;
          if (++pick[i] < slots[i].size()) break;
          pick[i] = 0;
          if (i == 0) goto done;
        }
        if (slots.empty()) break;
      }
    done:;
    }
    return out;
  }

  const ParseForest& forest_;
};

constexpr std::uint64_t kCountCap = 0x7fffffffffffffffULL;  // 2^63 - 1

struct SatCount {
  std::uint64_t value = 0;
  bool saturated = false;
};

SatCount sat_add(SatCount a, SatCount b) {
  SatCount out;
  out.saturated = a.saturated || b.saturated;
  if (a.value > kCountCap - b.value) {
    out.value = kCountCap;
    out.saturated = true;
  } else {
    out.value = a.value + b.value;
  }
  return out;
}

SatCount sat_mul(SatCount a, SatCount b) {
  SatCount out;
  out.saturated = a.saturated || b.saturated;
  std::uint64_t product = 0;
  if (a.value != 0 && b.value != 0) {
    if (__builtin_mul_overflow(a.value, b.value, &product) ||
        product > kCountCap) {
      out.value = kCountCap;
      out.saturated = true;
      return out;
    }
  }
  out.value = product;
  return out;
}

class TreeCounter {
 public:
  explicit TreeCounter(const ParseForest& forest) : forest_(forest) {}

  SatCount total() {
    SatCount sum;
    for (int root : forest_.roots()) sum = sat_add(sum, count(root, {root}));
    return sum;
  }

 private:
  SatCount count(int item_id, std::vector<int> chain) {
    auto key = std::make_pair(item_id, chain);
    auto memo_it = memo_.find(key);
    if (memo_it != memo_.end()) return memo_it->second;

    const ForestItem& item = forest_.items()[item_id];
    SatCount sum;
    for (const Derivation& d : item.derivations) {
      if (d.unary_link()) {
        int child = d.children.front();
        if (std::find(chain.begin(), chain.end(), child) != chain.end())
          continue;
        std::vector<int> extended = chain;
        extended.push_back(child);
        std::sort(extended.begin(), extended.end());
        sum = sat_add(sum, count(child, std::move(extended)));
        continue;
      }
      SatCount product{1, false};
      for (int child : d.children)
        if (child >= 0) product = sat_mul(product, count(child, {child}));
      sum = sat_add(sum, product);
    }
    memo_.emplace(std::move(key), sum);
    return sum;
  }

  const ParseForest& forest_;
  std::map<std::pair<int, std::vector<int>>, SatCount> memo_;
};

}  // namespace

std::optional<ParseForest> parse(
    const std::vector<std::string>& tags, const Grammar& grammar,
    const std::vector<std::string>& start_symbols) {
  if (tags.empty()) throw DataError("cannot parse an empty tag sequence");
  if (tags.size() >= 65536) throw DataError("tag sequence too long");
  if (grammar.rule_count() == 0) throw DataError("cannot parse with an empty grammar");

  std::vector<int> tag_ids(tags.size());
  for (std::size_t i = 0; i < tags.size(); ++i)
    tag_ids[i] = grammar.symbol_id(tags[i]).value_or(-1);

  ChartBuilder builder(tag_ids, grammar);
  builder.run();

  std::vector<int> roots;
  for (const std::string& symbol : start_symbols) {
    auto id = grammar.symbol_id(symbol);
    if (!id) continue;
    int item = builder.find_item(*id, 0, static_cast<int>(tags.size()));
    if (item >= 0) roots.push_back(item);
  }
  if (roots.empty()) return std::nullopt;
  std::sort(roots.begin(), roots.end());

  std::vector<std::string> symbols;
  symbols.reserve(grammar.symbol_count());
  for (std::size_t i = 0; i < grammar.symbol_count(); ++i)
    symbols.push_back(grammar.symbol_name(static_cast<int>(i)));

  return ParseForest(std::move(symbols), tags, builder.take_items(),
                     std::move(roots));
}

ParseCount count_parses(const ParseForest& forest) {
  TreeCounter counter(forest);
  SatCount total = counter.total();
  return ParseCount{total.value, total.saturated};
}

std::vector<Tree> enumerate_trees(const ParseForest& forest) {
  return TreeReader(forest).all();
}

std::string forest_to_json(const ParseForest& forest, const Grammar& grammar) {
  nlohmann::ordered_json j;
  j["tags"] = forest.tags();
  nlohmann::ordered_json items = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < forest.items().size(); ++i) {
    const ForestItem& item = forest.items()[i];
    nlohmann::ordered_json entry;
    entry["id"] = i;
    entry["label"] = forest.symbol_name(item.label);
    entry["start"] = item.start;
    entry["end"] = item.end;
    nlohmann::ordered_json derivations = nlohmann::ordered_json::array();
    for (const Derivation& d : item.derivations) {
      nlohmann::ordered_json deriv;
      deriv["rule"] = grammar.rule_string(d.rule_index);
      deriv["children"] = d.children;
      derivations.push_back(std::move(deriv));
    }
    entry["derivations"] = std::move(derivations);
    items.push_back(std::move(entry));
  }
  j["items"] = std::move(items);
  j["roots"] = forest.roots();
  return j.dump(2);
}

}  // namespace treeparse
