#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace katka {

// A trie key stored as a reference into a text. Forward keys read
// text[pos, pos + len); backward keys read text[pos - 1], text[pos - 2], ...
// down to text[pos - len], which is how reversed phrase suffixes are stored.
struct KeyRef {
  std::uint64_t pos = 0;
  std::uint32_t len = 0;
  bool backward = false;

  char byte(std::string_view text, std::size_t i) const {
    return backward ? text[pos - 1 - i] : text[pos + i];
  }
  std::string materialize(std::string_view text) const;
  bool operator==(const KeyRef&) const = default;
};

// Standalone key storage for tries over arbitrary string sets.
struct KeyCollection {
  std::string text;
  std::vector<KeyRef> keys;

  static KeyCollection from_strings(std::span<const std::string> strings);
};

// Position reached by a descent. The interval is the 1-based rank range of the
// keys below the locus.
struct Locus {
  std::uint32_t node = 0;
  std::uint32_t matched_depth = 0;
  bool verified = false;
  std::uint32_t lo = 0;
  std::uint32_t hi = 0;
};

/*
 * Patricia trie over a sorted set of keys. Nodes keep only the first byte of
 * each outgoing edge and their string depth; edge labels are read from the
 * text through the keys when a locus has to be verified. A key that ends at
 * an inner node marks that node terminal and takes the lowest rank below it.
 */
class CompactTrie {
 public:
  struct Node {
    std::uint32_t depth = 0;
    std::uint32_t lo = 0;  // rank interval, 1-based inclusive
    std::uint32_t hi = 0;
    std::uint32_t edge_begin = 0;
    std::uint32_t edge_end = 0;
    bool terminal = false;
  };
  struct Edge {
    unsigned char first = 0;
    std::uint32_t target = 0;
  };

  CompactTrie() = default;
  // keys must be strictly increasing in byte-wise lexicographic order, else
  // std::invalid_argument.
  CompactTrie(std::vector<KeyRef> keys, std::string_view text);

  // Reassembles a trie from serialized parts; checks structural consistency.
  static CompactTrie from_parts(std::vector<Node> nodes, std::vector<Edge> edges,
                                std::vector<KeyRef> keys);

  std::size_t size() const { return keys_.size(); }
  bool empty() const { return keys_.empty(); }
  std::span<const Node> nodes() const { return nodes_; }
  std::span<const Edge> edges() const { return edges_; }
  std::span<const KeyRef> keys() const { return keys_; }
  const KeyRef& key_at_rank(std::size_t rank) const { return keys_.at(rank - 1); }

  Locus root_locus() const;

  // Patricia descent: only the first byte of every edge is compared. The
  // returned locus is a candidate and may be a false positive.
  std::optional<Locus> blind_descend(std::string_view pattern) const;

  // Compares the locus' path label against pattern byte for byte.
  std::optional<Locus> verify_locus(const Locus& locus, std::string_view pattern,
                                    std::string_view text) const;

  std::string path_label(const Locus& locus, std::string_view text) const;

  // Child of node along byte c, if any.
  std::optional<std::uint32_t> child(std::uint32_t node, unsigned char c) const;

  Locus locus_at(std::uint32_t node, std::uint32_t depth) const {
    const Node& n = nodes_[node];
    return {node, depth, false, n.lo, n.hi};
  }

 private:
  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
  std::vector<KeyRef> keys_;
};

/*
 * Loci of pattern[0, 1), pattern[0, 2), ... pattern[0, max_len) from a single
 * incremental descent. Verification is lazy: the first request compares the
 * pattern once against the path label of the deepest candidate, which settles
 * every shorter length at the same time.
 */
class PatternLoci {
 public:
  PatternLoci() = default;
  PatternLoci(const CompactTrie& trie, std::string_view pattern, std::size_t max_len,
              std::string_view text);

  std::size_t max_len() const { return loci_.size(); }
  // Candidate (unverified) locus of the first len bytes; len == 0 gives the root.
  std::optional<Locus> candidate(std::size_t len) const;
  std::optional<Locus> verified(std::size_t len) const;
  // Number of text comparisons performed so far (0 or 1).
  std::size_t verifications() const { return verified_len_ ? 1 : 0; }

 private:
  const CompactTrie* trie_ = nullptr;
  std::string pattern_;
  std::string_view text_;
  std::vector<std::optional<Locus>> loci_;
  mutable std::optional<std::size_t> verified_len_;
};

inline CompactTrie build_trie(std::vector<KeyRef> keys, std::string_view text) {
  return CompactTrie(std::move(keys), text);
}

inline std::optional<Locus> blind_descend(const CompactTrie& trie, std::string_view pattern) {
  return trie.blind_descend(pattern);
}

inline std::optional<Locus> verify_locus(const CompactTrie& trie, const Locus& locus,
                                         std::string_view pattern, std::string_view text) {
  return trie.verify_locus(locus, pattern, text);
}

inline PatternLoci loci_for_pattern_extensions(const CompactTrie& trie, std::string_view pattern,
                                               std::size_t max_len, std::string_view text) {
  return PatternLoci(trie, pattern, max_len, text);
}

}  // namespace katka
