#include "katka/model.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>
#include <utility>

#include "katka/error.hpp"

namespace katka {

PhyloTree PhyloTree::from_nodes(const std::vector<NodeSpec>& nodes, std::size_t root) {
  if (nodes.empty()) {
    throw std::invalid_argument("tree has no vertices");
  }
  if (root >= nodes.size()) {
    throw std::invalid_argument("root id out of range");
  }

  std::vector<std::size_t> parent_count(nodes.size(), 0);
  for (const auto& node : nodes) {
    for (std::size_t c : node.children) {
      if (c >= nodes.size()) {
        throw std::invalid_argument("child id out of range");
      }
      ++parent_count[c];
    }
  }
  if (parent_count[root] != 0) {
    throw std::invalid_argument("root has a parent");
  }
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (i != root && parent_count[i] != 1) {
      throw std::invalid_argument("vertex " + std::to_string(i) + " has " +
                                  std::to_string(parent_count[i]) + " parents");
    }
  }

  // In-order numbering: first child subtree, the vertex, then the remaining
  // children. Iterative so deep caterpillars do not overflow the stack.
  std::vector<VertexNumber> number(nodes.size(), 0);
  VertexNumber next = 1;
  struct Frame {
    std::size_t id;
    std::size_t child;  // next child to visit
  };
  std::vector<Frame> stack{{root, 0}};
  while (!stack.empty()) {
    Frame& f = stack.back();
    const auto& kids = nodes[f.id].children;
    if (kids.empty()) {
      number[f.id] = next++;
      stack.pop_back();
      continue;
    }
    if (f.child == 1 && number[f.id] == 0) {
      number[f.id] = next++;
    }
    if (f.child < kids.size()) {
      std::size_t c = kids[f.child++];
      stack.push_back({c, 0});
    } else {
      if (number[f.id] == 0) {
        number[f.id] = next++;
      }
      stack.pop_back();
    }
  }
  if (next - 1 != nodes.size()) {
    // Every vertex has one parent but some are unreachable: there is a cycle.
    throw std::invalid_argument("tree contains a cycle or disconnected vertices");
  }

  PhyloTree tree;
  tree.vertices_.resize(nodes.size());
  tree.root_ = number[root];
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    Vertex& v = tree.vertices_[number[i] - 1];
    v.label = nodes[i].label;
    v.children.reserve(nodes[i].children.size());
    for (std::size_t c : nodes[i].children) {
      v.children.push_back(number[c]);
      tree.vertices_[number[c] - 1].parent = number[i];
    }
  }
  tree.leaf_ordinal_.assign(nodes.size(), 0);
  for (VertexNumber v = 1; v <= nodes.size(); ++v) {
    if (tree.vertices_[v - 1].children.empty()) {
      tree.leaves_.push_back(v);
      tree.leaf_ordinal_[v - 1] = static_cast<GenomeOrdinal>(tree.leaves_.size());
    }
  }
  return tree;
}

const PhyloTree::Vertex& PhyloTree::vertex(VertexNumber v) const {
  if (!contains(v)) {
    throw std::out_of_range("unknown vertex " + std::to_string(v));
  }
  return vertices_[v - 1];
}

VertexNumber PhyloTree::leaf_vertex(GenomeOrdinal ordinal) const {
  if (ordinal < 1 || ordinal > leaves_.size()) {
    throw std::out_of_range("unknown genome ordinal " + std::to_string(ordinal));
  }
  return leaves_[ordinal - 1];
}

std::optional<GenomeOrdinal> PhyloTree::leaf_ordinal(VertexNumber v) const {
  if (!contains(v) || leaf_ordinal_[v - 1] == 0) {
    return std::nullopt;
  }
  return leaf_ordinal_[v - 1];
}

std::optional<VertexNumber> PhyloTree::find_leaf(std::string_view label) const {
  for (VertexNumber v : leaves_) {
    if (vertices_[v - 1].label == label) {
      return v;
    }
  }
  return std::nullopt;
}

Concatenation::Concatenation(std::string text, std::vector<Span> spans, char sentinel)
    : text_(std::move(text)), spans_(std::move(spans)), sentinel_(sentinel) {}

std::string_view Concatenation::genome(GenomeOrdinal ordinal) const {
  if (ordinal < 1 || ordinal > spans_.size()) {
    throw std::out_of_range("unknown genome ordinal " + std::to_string(ordinal));
  }
  const Span& s = spans_[ordinal - 1];
  return std::string_view(text_).substr(s.begin, s.size());
}

std::optional<GenomeOrdinal> Concatenation::genome_of_position(std::size_t pos) const {
  if (pos > text_.size()) {
    throw std::out_of_range("position " + std::to_string(pos) + " past end of text");
  }
  if (spans_.empty()) {
    return std::nullopt;
  }
  if (pos == text_.size()) {
    return static_cast<GenomeOrdinal>(spans_.size());
  }
  // First span ending after pos.
  auto it = std::upper_bound(spans_.begin(), spans_.end(), pos,
                             [](std::size_t p, const Span& s) { return p < s.end; });
  if (it == spans_.end() || !it->contains(pos)) {
    return std::nullopt;
  }
  return static_cast<GenomeOrdinal>(it - spans_.begin() + 1);
}

Concatenation build_concatenation(const PhyloTree& tree, const std::vector<GenomeRecord>& genomes,
                                  char sentinel) {
  std::unordered_map<std::string_view, const GenomeRecord*> by_name;
  for (const auto& g : genomes) {
    if (!by_name.emplace(g.name, &g).second) {
      throw Error("duplicate genome '" + g.name + "'");
    }
  }

  std::string text;
  std::vector<Span> spans;
  std::size_t used = 0;
  for (VertexNumber leaf : tree.leaves()) {
    const std::string& name = tree.label(leaf);
    auto it = by_name.find(name);
    if (it == by_name.end()) {
      throw Error("no genome for leaf '" + name + "'");
    }
    const std::string& seq = it->second->sequence;
    if (seq.empty()) {
      throw Error("genome '" + name + "' is empty");
    }
    if (seq.find(sentinel) != std::string::npos) {
      throw Error("genome '" + name + "' contains the sentinel byte");
    }
    if (!spans.empty()) {
      text.push_back(sentinel);
    }
    spans.push_back({text.size(), text.size() + seq.size()});
    text += seq;
    ++used;
  }
  if (used != genomes.size()) {
    for (const auto& g : genomes) {
      if (!tree.find_leaf(g.name)) {
        throw Error("genome '" + g.name + "' matches no leaf of the tree");
      }
    }
  }
  return Concatenation(std::move(text), std::move(spans), sentinel);
}

}  // namespace katka
