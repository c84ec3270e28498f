#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "katka/contexts.hpp"
#include "katka/grid.hpp"
#include "katka/lca.hpp"
#include "katka/lz77.hpp"
#include "katka/model.hpp"
#include "katka/trie.hpp"

namespace katka {

inline constexpr std::uint32_t kIndexVersion = 1;

// Work counters for one classify call.
struct QueryStats {
  std::size_t descents = 0;       // incremental trie descents from the root
  std::size_t verifications = 0;  // path-label comparisons against the text
  std::size_t grid_queries = 0;
};

/*
 * One direction of the index: the text (the concatenation or its reverse),
 * its LZ77 parse, the tries over the reversed phrase suffixes and the boundary
 * prefixes, and the grid linking them. The forward side keeps the minimum
 * vertex per grid point, the reverse side the maximum.
 */
struct SideIndex {
  std::string text;
  Lz77Parse parse;
  CompactTrie suffix_trie;  // keys: reversed maximal phrase suffixes
  CompactTrie prefix_trie;  // keys: retained maximal boundary prefixes
  ContextGrid grid;
  bool reversed = false;
  char sentinel = kDefaultSentinel;

  // Best grid label over every occurrence of each length-k window of pattern,
  // which must already be in this side's orientation.
  std::vector<std::optional<VertexNumber>> window_bests(std::string_view pattern, std::size_t k,
                                                        QueryStats* stats = nullptr) const;
};

// genome_of_byte maps positions of text to genome ordinals; vertex_of_genome
// maps ordinals to the leaf vertices used as grid labels.
SideIndex build_side(std::string text, char sentinel, bool reversed,
                     const GenomeLookup& genome_of_byte,
                     std::span<const VertexNumber> vertex_of_genome);

// Leftmost (forward side) or rightmost (reverse side) genome vertex holding
// kmer, which is given in its original orientation on both sides.
// std::invalid_argument when kmer is empty or holds the sentinel.
std::optional<VertexNumber> side_query(const SideIndex& side, std::string_view kmer);

struct KmerResult {
  std::size_t position = 0;  // 1-based start in the pattern
  std::string kmer;
  std::optional<VertexNumber> answer;  // nullopt is NULL: no genome holds the k-mer
  std::optional<VertexNumber> leftmost;
  std::optional<VertexNumber> rightmost;

  bool operator==(const KmerResult&) const = default;
};

class KatkaIndex {
 public:
  KatkaIndex() = default;
  KatkaIndex(PhyloTree tree, SideIndex forward, SideIndex reverse, char sentinel);

  const PhyloTree& tree() const { return tree_; }
  const SideIndex& forward() const { return forward_; }
  const SideIndex& reverse() const { return reverse_; }
  const LcaStructure& lca() const { return lca_; }
  char sentinel() const { return sentinel_; }
  std::uint32_t version() const { return kIndexVersion; }
  std::size_t genome_count() const { return tree_.leaf_count(); }
  // Length of the concatenation, sentinels included.
  std::size_t text_size() const { return forward_.text.size(); }

  // One result per k-mer of pattern, empty when k exceeds its length.
  // std::invalid_argument for k == 0 or a pattern holding the sentinel.
  std::vector<KmerResult> classify(std::string_view pattern, std::size_t k,
                                   QueryStats* stats = nullptr) const;

 private:
  PhyloTree tree_;
  SideIndex forward_;
  SideIndex reverse_;
  LcaStructure lca_;
  char sentinel_ = kDefaultSentinel;
};

KatkaIndex build_index(const PhyloTree& tree, const std::vector<GenomeRecord>& genomes,
                       char sentinel = kDefaultSentinel);

inline std::vector<KmerResult> classify(const KatkaIndex& index, std::string_view pattern,
                                        std::size_t k, QueryStats* stats = nullptr) {
  return index.classify(pattern, k, stats);
}

}  // namespace katka
