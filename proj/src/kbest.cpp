#include "treeparse/kbest.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <queue>
#include <set>

namespace treeparse {

namespace {

struct Entry {
  double score = 0.0;
  std::string canon;
  Tree tree;
};

struct Candidate {
  double score = 0.0;
  std::string canon;
  Tree tree;
  int deriv = 0;
  std::vector<int> ranks;  // one rank per item child of the derivation
};

// Max-heap on score, ties resolved toward the smaller serialization.
struct WorseThan {
  bool operator()(const Candidate& a, const Candidate& b) const {
    if (a.score != b.score) return a.score < b.score;
    return a.canon > b.canon;
  }
};

// One stream per (item, unary-chain) state, yielding that state's trees
// in (score desc, canon asc) order. The chain carries the item ids of
// the unary links taken so far within the current span; a repeated id
// would repeat a label, so such derivations are skipped.
class StreamPool {
 public:
  StreamPool(const ParseForest& forest, const Grammar& grammar)
      : forest_(forest), grammar_(grammar) {}

  int state(int item, std::vector<int> chain) {
    std::sort(chain.begin(), chain.end());
    auto key = std::make_pair(item, chain);
    auto it = ids_.find(key);
    if (it != ids_.end()) return it->second;
    int id = static_cast<int>(streams_.size());
    ids_.emplace(std::move(key), id);
    streams_.push_back({item, std::move(chain)});
    return id;
  }

  // Entry k of a stream, or nullptr once the stream is exhausted.
  const Entry* entry(int stream_id, std::size_t k) {
    ensure_init(stream_id);
    while (streams_[stream_id].out.size() <= k)
      if (!next_group(stream_id)) return nullptr;
    return &streams_[stream_id].out[k];
  }

 private:
  struct Stream {
    int item = -1;
    std::vector<int> chain;  // sorted
    bool initialized = false;
    std::vector<Entry> out;
    std::priority_queue<Candidate, std::vector<Candidate>, WorseThan> heap;
    std::set<std::pair<int, std::vector<int>>> seen;
  };

  void ensure_init(int stream_id) {
    if (streams_[stream_id].initialized) return;
    streams_[stream_id].initialized = true;
    std::size_t deriv_count =
        forest_.items()[streams_[stream_id].item].derivations.size();
    for (std::size_t d = 0; d < deriv_count; ++d) {
      const Derivation& derivation =
          forest_.items()[streams_[stream_id].item].derivations[d];
      std::size_t item_children = 0;
      for (int child : derivation.children)
        if (child >= 0) ++item_children;
      push_candidate(stream_id, static_cast<int>(d),
                     std::vector<int>(item_children, 0));
    }
  }

  // Materializes candidate (deriv, ranks) if every referenced child
  // entry exists and pushes it onto the stream's heap.
  void push_candidate(int stream_id, int deriv, std::vector<int> ranks) {
    if (!streams_[stream_id].seen.insert({deriv, ranks}).second) return;
    int item_id = streams_[stream_id].item;
    const Derivation& derivation = forest_.items()[item_id].derivations[deriv];
    const std::vector<int> chain = streams_[stream_id].chain;

    if (derivation.unary_link()) {
      int child = derivation.children.front();
      if (std::binary_search(chain.begin(), chain.end(), child)) return;
      std::vector<int> extended = chain;
      extended.push_back(child);
      const Entry* sub = entry(state(child, std::move(extended)), ranks[0]);
      if (!sub) return;
      Candidate cand;
      cand.score = grammar_.log_prob(derivation.rule_index) + sub->score;
      cand.tree = Tree(forest_.symbol_name(forest_.items()[item_id].label),
                       {sub->tree});
      cand.canon = to_bracketed(cand.tree);
      cand.deriv = deriv;
      cand.ranks = std::move(ranks);
      streams_[stream_id].heap.push(std::move(cand));
      return;
    }

    double score = grammar_.log_prob(derivation.rule_index);
    std::vector<Tree> children;
    children.reserve(derivation.children.size());
    std::size_t slot = 0;
    for (int child : derivation.children) {
      if (child < 0) {
        children.push_back(Tree(forest_.symbol_name(terminal_symbol(child))));
        continue;
      }
      const Entry* sub = entry(state(child, {child}), ranks[slot]);
      if (!sub) return;
      ++slot;
      score += sub->score;
      children.push_back(sub->tree);
    }
    Candidate cand;
    cand.score = score;
    cand.tree = Tree(forest_.symbol_name(forest_.items()[item_id].label),
                     std::move(children));
    cand.canon = to_bracketed(cand.tree);
    cand.deriv = deriv;
    cand.ranks = std::move(ranks);
    streams_[stream_id].heap.push(std::move(cand));
  }

  // Pops every pending candidate tied at the current best score (their
  // successors join the heap as they are popped, so the tie group is
  // complete when the loop ends), orders the group by serialization, and
  // appends it to the output. Successor scores never exceed their
  // predecessor's: IEEE addition is monotone, so substituting a
  // lower-ranked child entry cannot raise the fold.
  bool next_group(int stream_id) {
    Stream& stream = streams_[stream_id];
    if (stream.heap.empty()) return false;
    const double score = stream.heap.top().score;
    std::vector<Candidate> group;
    while (!streams_[stream_id].heap.empty() &&
           streams_[stream_id].heap.top().score == score) {
      Candidate cand = streams_[stream_id].heap.top();
      streams_[stream_id].heap.pop();
      for (std::size_t i = 0; i < cand.ranks.size(); ++i) {
        std::vector<int> next = cand.ranks;
        ++next[i];
        push_candidate(stream_id, cand.deriv, std::move(next));
      }
      group.push_back(std::move(cand));
    }
    std::sort(group.begin(), group.end(),
              [](const Candidate& a, const Candidate& b) {
                return a.canon < b.canon;
              });
    for (Candidate& cand : group)
      streams_[stream_id].out.push_back(
          Entry{cand.score, std::move(cand.canon), std::move(cand.tree)});
    return true;
  }

  const ParseForest& forest_;
  const Grammar& grammar_;
  std::map<std::pair<int, std::vector<int>>, int> ids_;
  std::deque<Stream> streams_;
};

}  // namespace

std::vector<RankedParse> kbest(const ParseForest& forest,
                               const Grammar& grammar, std::size_t k) {
  StreamPool pool(forest, grammar);

  // Merge the per-root streams; each is already sorted. Keys are copied
  // into the heap: forcing later entries may reallocate a stream's
  // output vector.
  struct Head {
    double score;
    std::string canon;
    int stream;
    std::size_t index;
  };
  auto worse = [](const Head& a, const Head& b) {
    if (a.score != b.score) return a.score < b.score;
    return a.canon > b.canon;
  };
  std::priority_queue<Head, std::vector<Head>, decltype(worse)> heads(worse);
  for (int root : forest.roots()) {
    int stream = pool.state(root, {root});
    if (const Entry* e = pool.entry(stream, 0))
      heads.push({e->score, e->canon, stream, 0});
  }

  std::vector<RankedParse> result;
  while (result.size() < k && !heads.empty()) {
    Head head = heads.top();
    heads.pop();
    result.push_back(RankedParse{pool.entry(head.stream, head.index)->tree,
                                 head.score, "pcfg"});
    if (const Entry* e = pool.entry(head.stream, head.index + 1))
      heads.push({e->score, e->canon, head.stream, head.index + 1});
  }
  return result;
}

}  // namespace treeparse
