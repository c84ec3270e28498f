#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace katka {

// Vertices are identified by their 1-based in-order number. 0 means "no vertex".
using VertexNumber = std::uint32_t;
// Genomes are identified by their 1-based position in left-to-right leaf order.
using GenomeOrdinal = std::uint32_t;

inline constexpr char kDefaultSentinel = '$';

/*
 * Rooted, ordered tree. Vertex numbers follow an in-order walk that places a
 * vertex after its first child subtree, so leaves get increasing numbers from
 * left to right and, in a binary tree, leaf i has number 2i-1.
 */
class PhyloTree {
 public:
  struct Vertex {
    VertexNumber parent = 0;
    std::vector<VertexNumber> children;
    std::string label;
  };

  // Construction input: nodes under arbitrary ids, children given in order.
  struct NodeSpec {
    std::vector<std::size_t> children;
    std::string label;
  };

  PhyloTree() = default;

  // Throws std::invalid_argument unless nodes form a single tree rooted at root.
  static PhyloTree from_nodes(const std::vector<NodeSpec>& nodes, std::size_t root);

  std::size_t size() const { return vertices_.size(); }
  VertexNumber root() const { return root_; }

  const Vertex& vertex(VertexNumber v) const;
  VertexNumber parent(VertexNumber v) const { return vertex(v).parent; }
  std::span<const VertexNumber> children(VertexNumber v) const { return vertex(v).children; }
  const std::string& label(VertexNumber v) const { return vertex(v).label; }
  bool is_leaf(VertexNumber v) const { return vertex(v).children.empty(); }
  bool contains(VertexNumber v) const { return v >= 1 && v <= vertices_.size(); }

  // Leaves in left-to-right order.
  std::span<const VertexNumber> leaves() const { return leaves_; }
  std::size_t leaf_count() const { return leaves_.size(); }
  VertexNumber leaf_vertex(GenomeOrdinal ordinal) const;
  std::optional<GenomeOrdinal> leaf_ordinal(VertexNumber v) const;

  std::optional<VertexNumber> find_leaf(std::string_view label) const;

 private:
  std::vector<Vertex> vertices_;  // vertices_[v - 1]
  VertexNumber root_ = 0;
  std::vector<VertexNumber> leaves_;
  std::vector<GenomeOrdinal> leaf_ordinal_;  // 0 for internal vertices
};

// Newick subset: nested parentheses, optional labels (plain or single-quoted),
// ignored branch lengths and [comments], terminating ';'. Leaf labels must be
// unique and non-empty. An unlabeled unary root chain collapses onto its child,
// so "(A);" is the single-leaf tree.
PhyloTree parse_newick(std::string_view source);
PhyloTree parse_newick(std::istream& in);

struct GenomeRecord {
  std::string name;
  std::string sequence;
};

// Multi-record FASTA. Names are the header up to the first whitespace.
// Sequences are uppercased and stripped of whitespace.
std::vector<GenomeRecord> parse_fasta(std::istream& in, char sentinel = kDefaultSentinel);

struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  bool contains(std::size_t pos) const { return pos >= begin && pos < end; }
  bool operator==(const Span&) const = default;
};

/*
 * Genomes joined in leaf order with a single sentinel between consecutive
 * genomes and none at the end.
 */
class Concatenation {
 public:
  Concatenation() = default;
  Concatenation(std::string text, std::vector<Span> spans, char sentinel);

  const std::string& text() const { return text_; }
  std::span<const Span> spans() const { return spans_; }
  char sentinel() const { return sentinel_; }
  std::size_t size() const { return text_.size(); }
  std::size_t genome_count() const { return spans_.size(); }

  std::string_view genome(GenomeOrdinal ordinal) const;

  // Genome whose span holds pos, nullopt on a sentinel. pos == size() maps to
  // the last genome. Throws std::out_of_range past that.
  std::optional<GenomeOrdinal> genome_of_position(std::size_t pos) const;

 private:
  std::string text_;
  std::vector<Span> spans_;
  char sentinel_ = kDefaultSentinel;
};

// genomes must carry exactly the tree's leaf labels (in any order).
Concatenation build_concatenation(const PhyloTree& tree, const std::vector<GenomeRecord>& genomes,
                                  char sentinel = kDefaultSentinel);

}  // namespace katka
