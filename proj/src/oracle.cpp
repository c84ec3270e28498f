#include "katka/oracle.hpp"

#include <stdexcept>

namespace katka::oracle {

namespace {

const GenomeRecord& genome_for_leaf(const PhyloTree& tree, const std::vector<GenomeRecord>& genomes,
                                    VertexNumber leaf) {
  for (const auto& g : genomes) {
    if (g.name == tree.label(leaf)) {
      return g;
    }
  }
  throw std::invalid_argument("no genome for leaf '" + tree.label(leaf) + "'");
}

}  // namespace

OccurrenceSet occurrences(const PhyloTree& tree, const std::vector<GenomeRecord>& genomes,
                          std::string_view kmer) {
  OccurrenceSet out;
  auto leaves = tree.leaves();
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    const std::string& seq = genome_for_leaf(tree, genomes, leaves[i]).sequence;
    if (seq.find(kmer) != std::string::npos) {
      out.insert(static_cast<GenomeOrdinal>(i + 1));
    }
  }
  return out;
}

VertexNumber naive_lca(const PhyloTree& tree, VertexNumber u, VertexNumber v) {
  auto depth = [&](VertexNumber x) {
    std::size_t d = 0;
    for (; tree.parent(x) != 0; x = tree.parent(x)) {
      ++d;
    }
    return d;
  };
  std::size_t du = depth(u);
  std::size_t dv = depth(v);
  for (; du > dv; --du) {
    u = tree.parent(u);
  }
  for (; dv > du; --dv) {
    v = tree.parent(v);
  }
  while (u != v) {
    u = tree.parent(u);
    v = tree.parent(v);
  }
  return u;
}

std::vector<NaiveResult> naive_classify(const PhyloTree& tree,
                                        const std::vector<GenomeRecord>& genomes,
                                        std::string_view pattern, std::size_t k, char sentinel) {
  if (k == 0) {
    throw std::invalid_argument("k must be positive");
  }
  if (pattern.find(sentinel) != std::string_view::npos) {
    throw std::invalid_argument("pattern contains the sentinel byte");
  }
  std::vector<NaiveResult> out;
  for (std::size_t i = 0; i + k <= pattern.size(); ++i) {
    NaiveResult r;
    r.position = i + 1;
    r.kmer = std::string(pattern.substr(i, k));
    r.genomes = occurrences(tree, genomes, r.kmer);
    for (GenomeOrdinal g : r.genomes) {
      VertexNumber leaf = tree.leaf_vertex(g);
      r.answer = r.answer ? naive_lca(tree, *r.answer, leaf) : leaf;
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace katka::oracle
