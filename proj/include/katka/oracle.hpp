#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "katka/model.hpp"

// Brute-force reference answers, written against the model types only.
namespace katka::oracle {

// Genome ordinals (1-based, leaf order) whose sequence contains kmer.
using OccurrenceSet = std::set<GenomeOrdinal>;

OccurrenceSet occurrences(const PhyloTree& tree, const std::vector<GenomeRecord>& genomes,
                          std::string_view kmer);

// Lowest common ancestor by walking parent pointers.
VertexNumber naive_lca(const PhyloTree& tree, VertexNumber u, VertexNumber v);

struct NaiveResult {
  std::size_t position = 0;  // 1-based
  std::string kmer;
  std::optional<VertexNumber> answer;
  OccurrenceSet genomes;
};

// Same contract as KatkaIndex::classify, by substring scans.
std::vector<NaiveResult> naive_classify(const PhyloTree& tree,
                                        const std::vector<GenomeRecord>& genomes,
                                        std::string_view pattern, std::size_t k,
                                        char sentinel = kDefaultSentinel);

}  // namespace katka::oracle
