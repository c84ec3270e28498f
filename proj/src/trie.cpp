#include "katka/trie.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace katka {

std::string KeyRef::materialize(std::string_view text) const {
  std::string out(len, '\0');
  for (std::uint32_t i = 0; i < len; ++i) {
    out[i] = byte(text, i);
  }
  return out;
}

KeyCollection KeyCollection::from_strings(std::span<const std::string> strings) {
  KeyCollection kc;
  for (const auto& s : strings) {
    kc.keys.push_back({kc.text.size(), static_cast<std::uint32_t>(s.size()), false});
    kc.text += s;
  }
  return kc;
}

namespace {

bool byte_less(char a, char b) {
  return static_cast<unsigned char>(a) < static_cast<unsigned char>(b);
}

std::size_t common_prefix(const std::string& a, const std::string& b) {
  std::size_t n = std::min(a.size(), b.size());
  std::size_t i = 0;
  while (i < n && a[i] == b[i]) {
    ++i;
  }
  return i;
}

}  // namespace

CompactTrie::CompactTrie(std::vector<KeyRef> keys, std::string_view text) : keys_(std::move(keys)) {
  std::vector<std::string> strs;
  strs.reserve(keys_.size());
  for (const auto& k : keys_) {
    if (k.backward ? k.pos < k.len : k.pos + k.len > text.size()) {
      throw std::invalid_argument("trie key reaches outside the text");
    }
    strs.push_back(k.materialize(text));
  }
  for (std::size_t i = 1; i < strs.size(); ++i) {
    if (!std::lexicographical_compare(strs[i - 1].begin(), strs[i - 1].end(), strs[i].begin(),
                                      strs[i].end(), byte_less)) {
      throw std::invalid_argument("trie keys must be sorted and distinct");
    }
  }

  const auto n = static_cast<std::uint32_t>(strs.size());
  nodes_.push_back({0, 1, n, 0, 0, false});
  if (n == 0) {
    nodes_[0].lo = 0;
    return;
  }

  // Keys [lo, hi) below node id share its first depth bytes.
  struct Work {
    std::uint32_t id;
    std::uint32_t lo;
    std::uint32_t hi;
  };
  std::vector<Work> todo{{0, 0, n}};
  while (!todo.empty()) {
    auto [id, lo, hi] = todo.back();
    todo.pop_back();
    const std::uint32_t depth = nodes_[id].depth;
    std::uint32_t i = lo;
    if (strs[i].size() == depth) {
      nodes_[id].terminal = true;
      ++i;
    }
    nodes_[id].edge_begin = static_cast<std::uint32_t>(edges_.size());
    while (i < hi) {
      const char c = strs[i][depth];
      std::uint32_t j = i + 1;
      while (j < hi && strs[j][depth] == c) {
        ++j;
      }
      const auto child_depth = static_cast<std::uint32_t>(
          j - i == 1 ? strs[i].size() : common_prefix(strs[i], strs[j - 1]));
      const auto child = static_cast<std::uint32_t>(nodes_.size());
      nodes_.push_back({child_depth, i + 1, j, 0, 0, false});
      edges_.push_back({static_cast<unsigned char>(c), child});
      todo.push_back({child, i, j});
      i = j;
    }
    nodes_[id].edge_end = static_cast<std::uint32_t>(edges_.size());
  }
}

CompactTrie CompactTrie::from_parts(std::vector<Node> nodes, std::vector<Edge> edges,
                                    std::vector<KeyRef> keys) {
  if (nodes.empty()) {
    throw std::invalid_argument("trie without a root");
  }
  for (const Node& nd : nodes) {
    if (nd.edge_begin > nd.edge_end || nd.edge_end > edges.size() || nd.hi > keys.size() ||
        (nd.lo > nd.hi + 1)) {
      throw std::invalid_argument("corrupt trie node");
    }
  }
  for (const Edge& e : edges) {
    if (e.target == 0 || e.target >= nodes.size()) {
      throw std::invalid_argument("corrupt trie edge");
    }
  }
  CompactTrie t;
  t.nodes_ = std::move(nodes);
  t.edges_ = std::move(edges);
  t.keys_ = std::move(keys);
  return t;
}

Locus CompactTrie::root_locus() const {
  Locus l = locus_at(0, 0);
  l.verified = true;
  return l;
}

std::optional<std::uint32_t> CompactTrie::child(std::uint32_t node, unsigned char c) const {
  const Node& n = nodes_[node];
  auto first = edges_.begin() + n.edge_begin;
  auto last = edges_.begin() + n.edge_end;
  auto it = std::lower_bound(first, last, c, [](const Edge& e, unsigned char v) { return e.first < v; });
  if (it == last || it->first != c) {
    return std::nullopt;
  }
  return it->target;
}

std::optional<Locus> CompactTrie::blind_descend(std::string_view pattern) const {
  if (nodes_.empty() || keys_.empty()) {
    return std::nullopt;
  }
  std::uint32_t cur = 0;
  while (nodes_[cur].depth < pattern.size()) {
    auto next = child(cur, static_cast<unsigned char>(pattern[nodes_[cur].depth]));
    if (!next) {
      return std::nullopt;
    }
    cur = *next;
  }
  Locus l = locus_at(cur, static_cast<std::uint32_t>(pattern.size()));
  l.verified = pattern.empty();
  return l;
}

std::string CompactTrie::path_label(const Locus& locus, std::string_view text) const {
  if (locus.matched_depth == 0) {
    return {};
  }
  const KeyRef& k = keys_.at(locus.lo - 1);
  std::string out(locus.matched_depth, '\0');
  for (std::uint32_t i = 0; i < locus.matched_depth; ++i) {
    out[i] = k.byte(text, i);
  }
  return out;
}

std::optional<Locus> CompactTrie::verify_locus(const Locus& locus, std::string_view pattern,
                                               std::string_view text) const {
  if (pattern.size() != locus.matched_depth) {
    return std::nullopt;
  }
  if (locus.matched_depth > 0) {
    const KeyRef& k = keys_.at(locus.lo - 1);
    for (std::uint32_t i = 0; i < locus.matched_depth; ++i) {
      if (k.byte(text, i) != pattern[i]) {
        return std::nullopt;
      }
    }
  }
  Locus l = locus;
  l.verified = true;
  return l;
}

PatternLoci::PatternLoci(const CompactTrie& trie, std::string_view pattern, std::size_t max_len,
                         std::string_view text)
    : trie_(&trie), pattern_(pattern.substr(0, std::min(max_len, pattern.size()))), text_(text) {
  loci_.resize(pattern_.size());
  if (trie.empty()) {
    return;
  }
  std::uint32_t cur = 0;
  for (std::size_t len = 1; len <= pattern_.size(); ++len) {
    if (trie.nodes()[cur].depth < len) {
      // depth == len - 1 here: the previous length ended exactly on cur.
      auto next = trie.child(cur, static_cast<unsigned char>(pattern_[len - 1]));
      if (!next) {
        break;
      }
      cur = *next;
    }
    loci_[len - 1] = trie.locus_at(cur, static_cast<std::uint32_t>(len));
  }
}

std::optional<Locus> PatternLoci::candidate(std::size_t len) const {
  if (len == 0) {
    return trie_ && !trie_->empty() ? std::optional<Locus>(trie_->root_locus()) : std::nullopt;
  }
  if (len > loci_.size()) {
    return std::nullopt;
  }
  return loci_[len - 1];
}

std::optional<Locus> PatternLoci::verified(std::size_t len) const {
  auto c = candidate(len);
  if (!c || len == 0) {
    return c;
  }
  if (!verified_len_) {
    std::size_t deepest = 0;
    while (deepest < loci_.size() && loci_[deepest]) {
      ++deepest;
    }
    // Path labels of shallower loci are prefixes of the deepest one.
    const Locus& d = *loci_[deepest - 1];
    const KeyRef& k = trie_->key_at_rank(d.lo);
    std::size_t match = 0;
    while (match < deepest && k.byte(text_, match) == pattern_[match]) {
      ++match;
    }
    verified_len_ = match;
  }
  if (len > *verified_len_) {
    return std::nullopt;
  }
  c->verified = true;
  return c;
}

}  // namespace katka
