#pragma once

#include <cstdint>
#include <vector>

#include "katka/model.hpp"

namespace katka {

/*
 * Lowest common ancestors by range-minimum over the Euler tour depths.
 * O(V log V) preprocessing, O(1) per query.
 */
class LcaStructure {
 public:
  LcaStructure() = default;
  explicit LcaStructure(const PhyloTree& tree);

  std::size_t vertex_count() const { return first_.size(); }
  const std::vector<VertexNumber>& euler_tour() const { return tour_; }
  const std::vector<std::uint32_t>& depths() const { return depth_; }  // per tour entry

  // Throws std::out_of_range for unknown vertices.
  VertexNumber lca(VertexNumber u, VertexNumber v) const;

 private:
  std::uint32_t better(std::uint32_t a, std::uint32_t b) const {
    return depth_[b] < depth_[a] ? b : a;
  }

  std::vector<VertexNumber> tour_;
  std::vector<std::uint32_t> depth_;
  std::vector<std::uint32_t> first_;  // first_[v - 1]: first tour index of v
  // table_[j][i]: tour index of the shallowest entry in [i, i + 2^j)
  std::vector<std::vector<std::uint32_t>> table_;
};

inline LcaStructure build_lca(const PhyloTree& tree) { return LcaStructure(tree); }

inline VertexNumber lca(const LcaStructure& s, VertexNumber u, VertexNumber v) {
  return s.lca(u, v);
}

}  // namespace katka
