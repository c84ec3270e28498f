#include "katka/index.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace katka {

SideIndex build_side(std::string text, char sentinel, bool reversed,
                     const GenomeLookup& genome_of_byte,
                     std::span<const VertexNumber> vertex_of_genome) {
  SideIndex side;
  side.text = std::move(text);
  side.reversed = reversed;
  side.sentinel = sentinel;
  side.parse = lz77_parse(side.text);

  ContextSets sets = build_context_sets(side.text, side.parse, sentinel, genome_of_byte);

  // Suffix keys are read backwards from the boundary, so their byte order is
  // the co-lexicographic order of the suffixes themselves.
  std::vector<KeyRef> suffix_keys;
  suffix_keys.reserve(sets.suffixes.size());
  for (const auto& e : sets.suffixes.entries()) {
    suffix_keys.push_back({e.text_pos, static_cast<std::uint32_t>(e.value.size()), true});
  }
  std::vector<KeyRef> prefix_keys;
  prefix_keys.reserve(sets.prefixes.size());
  for (const auto& e : sets.prefixes.entries()) {
    prefix_keys.push_back({e.text_pos, static_cast<std::uint32_t>(e.value.size()), false});
  }
  side.suffix_trie = CompactTrie(std::move(suffix_keys), side.text);
  side.prefix_trie = CompactTrie(std::move(prefix_keys), side.text);

  side.grid = ContextGrid(grid_points(sets.contexts, sets.suffixes, sets.prefixes,
                                      reversed ? Aggregate::max : Aggregate::min, vertex_of_genome),
                          reversed ? Aggregate::max : Aggregate::min,
                          static_cast<std::uint32_t>(sets.suffixes.size()),
                          static_cast<std::uint32_t>(sets.prefixes.size()));
  return side;
}

std::vector<std::optional<VertexNumber>> SideIndex::window_bests(std::string_view pattern,
                                                                 std::size_t k,
                                                                 QueryStats* stats) const {
  const std::size_t m = pattern.size();
  if (k == 0 || k > m) {
    return {};
  }
  const bool max_side = grid.aggregate() == Aggregate::max;

  // Descents are started lazily and shared by every window: one through the
  // suffix trie per end position (reading the pattern leftwards) and one
  // through the prefix trie per start position.
  std::vector<std::optional<PatternLoci>> ending_at(m);
  std::vector<std::optional<PatternLoci>> starting_at(m);
  std::string reversed_piece;
  auto suffix_loci = [&](std::size_t end) -> const PatternLoci& {
    auto& slot = ending_at[end];
    if (!slot) {
      const std::size_t len = std::min(k, end + 1);
      reversed_piece.assign(pattern.rend() - static_cast<std::ptrdiff_t>(end) - 1,
                            pattern.rend() - static_cast<std::ptrdiff_t>(end) - 1 +
                                static_cast<std::ptrdiff_t>(len));
      slot.emplace(suffix_trie, reversed_piece, len, text);
      if (stats) {
        ++stats->descents;
      }
    }
    return *slot;
  };
  auto prefix_loci = [&](std::size_t start) -> const PatternLoci& {
    auto& slot = starting_at[start];
    if (!slot) {
      slot.emplace(prefix_trie, pattern.substr(start), std::min(k - 1, m - start), text);
      if (stats) {
        ++stats->descents;
      }
    }
    return *slot;
  };

  std::vector<std::optional<VertexNumber>> out(m - k + 1);
  for (std::size_t i = 0; i + k <= m; ++i) {
    std::optional<VertexNumber> best;
    // Split the window into a non-empty left part ending at j, matched against
    // phrase suffixes, and a possibly empty right part matched against prefixes.
    for (std::size_t j = i; j < i + k; ++j) {
      const std::size_t left_len = j - i + 1;
      const std::size_t right_len = k - left_len;
      auto left = suffix_loci(j).verified(left_len);
      if (!left) {
        continue;
      }
      std::optional<Locus> right;
      if (right_len == 0) {
        if (prefix_trie.empty()) {
          continue;
        }
        right = prefix_trie.root_locus();
      } else {
        right = prefix_loci(j + 1).verified(right_len);
      }
      if (!right) {
        continue;
      }
      if (stats) {
        ++stats->grid_queries;
      }
      auto found = grid.range_best(left->lo, left->hi, right->lo, right->hi);
      if (found && (!best || (max_side ? *found > *best : *found < *best))) {
        best = found;
      }
    }
    out[i] = best;
  }
  if (stats) {
    for (const auto& l : ending_at) {
      stats->verifications += l ? l->verifications() : 0;
    }
    for (const auto& l : starting_at) {
      stats->verifications += l ? l->verifications() : 0;
    }
  }
  return out;
}

std::optional<VertexNumber> side_query(const SideIndex& side, std::string_view kmer) {
  if (kmer.empty()) {
    throw std::invalid_argument("empty k-mer");
  }
  if (kmer.find(side.sentinel) != std::string_view::npos) {
    throw std::invalid_argument("k-mer contains the sentinel byte");
  }
  if (!side.reversed) {
    return side.window_bests(kmer, kmer.size()).front();
  }
  std::string flipped(kmer.rbegin(), kmer.rend());
  return side.window_bests(flipped, flipped.size()).front();
}

KatkaIndex::KatkaIndex(PhyloTree tree, SideIndex forward, SideIndex reverse, char sentinel)
    : tree_(std::move(tree)),
      forward_(std::move(forward)),
      reverse_(std::move(reverse)),
      lca_(tree_),
      sentinel_(sentinel) {}

std::vector<KmerResult> KatkaIndex::classify(std::string_view pattern, std::size_t k,
                                             QueryStats* stats) const {
  if (k == 0) {
    throw std::invalid_argument("k must be positive");
  }
  if (pattern.find(sentinel_) != std::string_view::npos) {
    throw std::invalid_argument("pattern contains the sentinel byte");
  }
  const std::size_t m = pattern.size();
  if (k > m) {
    return {};
  }

  const auto left = forward_.window_bests(pattern, k, stats);
  const std::string flipped(pattern.rbegin(), pattern.rend());
  const auto right = reverse_.window_bests(flipped, k, stats);

  std::vector<KmerResult> out;
  out.reserve(m - k + 1);
  for (std::size_t i = 0; i + k <= m; ++i) {
    KmerResult r;
    r.position = i + 1;
    r.kmer = std::string(pattern.substr(i, k));
    r.leftmost = left[i];
    // Window i of the pattern is window m - k - i of its reverse.
    r.rightmost = right[m - k - i];
    if (r.leftmost.has_value() != r.rightmost.has_value()) {
      throw std::logic_error("forward and reverse sides disagree on k-mer '" + r.kmer + "'");
    }
    if (r.leftmost) {
      r.answer = lca_.lca(*r.leftmost, *r.rightmost);
    }
    out.push_back(std::move(r));
  }
  return out;
}

KatkaIndex build_index(const PhyloTree& tree, const std::vector<GenomeRecord>& genomes,
                       char sentinel) {
  Concatenation concat = build_concatenation(tree, genomes, sentinel);
  const std::size_t n = concat.size();
  auto leaves = tree.leaves();

  SideIndex forward = build_side(
      concat.text(), sentinel, false,
      [&concat](std::size_t pos) { return concat.genome_of_position(pos); }, leaves);

  // Byte p of the reversed text is byte n - 1 - p of the concatenation.
  std::string flipped(concat.text().rbegin(), concat.text().rend());
  SideIndex reverse = build_side(
      std::move(flipped), sentinel, true,
      [&concat, n](std::size_t pos) { return concat.genome_of_position(n - 1 - pos); }, leaves);

  return KatkaIndex(tree, std::move(forward), std::move(reverse), sentinel);
}

}  // namespace katka
