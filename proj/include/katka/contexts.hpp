#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "katka/grid.hpp"
#include "katka/lz77.hpp"
#include "katka/model.hpp"

namespace katka {

// Byte-wise orders on raw (unsigned) bytes.
bool lex_less(std::string_view a, std::string_view b);
bool colex_less(std::string_view a, std::string_view b);

// A context string together with where it can be read in the text: the end
// position (exclusive) for phrase suffixes, the start position for prefixes.
struct ContextString {
  std::string_view value;
  std::size_t text_pos = 0;
};

/*
 * Deduplicated, sorted context strings with 1-based ranks. SuffixSet sorts
 * co-lexicographically, PrefixSet lexicographically. Views point into the
 * text the set was built from.
 */
template <bool Colex>
class ContextStringSet {
 public:
  ContextStringSet() = default;
  // Sorts and deduplicates; keeps the first text position seen per string.
  explicit ContextStringSet(std::vector<ContextString> entries);

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const ContextString& at_rank(std::size_t rank) const { return entries_.at(rank - 1); }
  std::span<const ContextString> entries() const { return entries_; }
  std::vector<std::string_view> strings() const;

  std::optional<std::size_t> rank(std::string_view s) const;

 private:
  static bool less(std::string_view a, std::string_view b) {
    return Colex ? colex_less(a, b) : lex_less(a, b);
  }
  std::vector<ContextString> entries_;
};

using SuffixSet = ContextStringSet<true>;
using PrefixSet = ContextStringSet<false>;

// A phrase boundary preceded by a non-empty sentinel-free phrase suffix.
struct BoundaryContext {
  std::size_t boundary_pos = 0;
  std::string_view suffix;
  std::string_view prefix;
  GenomeOrdinal genome = 0;  // genome holding byte boundary_pos - 1
};

struct ContextSets {
  SuffixSet suffixes;
  PrefixSet prefixes;
  // Maximal prefixes read at every boundary before discarding, lex order.
  std::vector<std::string_view> candidate_prefixes;
  std::vector<BoundaryContext> contexts;
};

// Part of phrase after its last sentinel (all of it when there is none).
std::string_view max_suffix_of_phrase(std::string_view phrase, char sentinel = kDefaultSentinel);

// Longest sentinel-free prefix of text[pos..]. Throws std::out_of_range when
// pos > text.size().
std::string_view max_prefix_at(std::string_view text, std::size_t pos,
                               char sentinel = kDefaultSentinel);

// Maps a byte position of the indexed text to the genome holding it.
using GenomeLookup = std::function<std::optional<GenomeOrdinal>(std::size_t)>;

// The returned views borrow text.
ContextSets build_context_sets(std::string_view text, const Lz77Parse& parse, char sentinel,
                               const GenomeLookup& genome_of_byte);
ContextSets build_context_sets(const Concatenation& c, const Lz77Parse& parse);

// One point per distinct (co-lex suffix rank, lex prefix rank), labeled with the
// aggregate of the vertex numbers of every genome sharing that pair.
// vertex_of_genome[o - 1] is the leaf vertex of genome ordinal o.
std::vector<GridPoint> grid_points(std::span<const BoundaryContext> contexts,
                                   const SuffixSet& suffixes, const PrefixSet& prefixes,
                                   Aggregate aggregate,
                                   std::span<const VertexNumber> vertex_of_genome);

}  // namespace katka
