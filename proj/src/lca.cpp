#include "katka/lca.hpp"

#include <bit>
#include <stdexcept>
#include <string>

namespace katka {

LcaStructure::LcaStructure(const PhyloTree& tree) {
  const std::size_t n = tree.size();
  if (n == 0) {
    return;
  }
  first_.assign(n, 0);
  tour_.reserve(2 * n - 1);
  depth_.reserve(2 * n - 1);

  struct Frame {
    VertexNumber v;
    std::uint32_t depth;
    std::size_t next_child;
  };
  std::vector<Frame> stack{{tree.root(), 0, 0}};
  first_[tree.root() - 1] = 0;
  tour_.push_back(tree.root());
  depth_.push_back(0);
  while (!stack.empty()) {
    Frame& f = stack.back();
    auto kids = tree.children(f.v);
    if (f.next_child < kids.size()) {
      VertexNumber c = kids[f.next_child++];
      std::uint32_t d = f.depth + 1;
      first_[c - 1] = static_cast<std::uint32_t>(tour_.size());
      tour_.push_back(c);
      depth_.push_back(d);
      stack.push_back({c, d, 0});
      continue;
    }
    stack.pop_back();
    if (!stack.empty()) {
      tour_.push_back(stack.back().v);
      depth_.push_back(stack.back().depth);
    }
  }

  const std::size_t m = tour_.size();
  table_.emplace_back(m);
  for (std::uint32_t i = 0; i < m; ++i) {
    table_[0][i] = i;
  }
  for (std::size_t width = 2; width <= m; width *= 2) {
    const auto& prev = table_.back();
    std::vector<std::uint32_t> row(m - width + 1);
    for (std::size_t i = 0; i < row.size(); ++i) {
      row[i] = better(prev[i], prev[i + width / 2]);
    }
    table_.push_back(std::move(row));
  }
}

VertexNumber LcaStructure::lca(VertexNumber u, VertexNumber v) const {
  if (u < 1 || u > first_.size() || v < 1 || v > first_.size()) {
    throw std::out_of_range("unknown vertex in lca(" + std::to_string(u) + ", " +
                            std::to_string(v) + ")");
  }
  std::uint32_t a = first_[u - 1];
  std::uint32_t b = first_[v - 1];
  if (a > b) {
    std::swap(a, b);
  }
  const std::uint32_t width = b - a + 1;
  const int level = std::bit_width(width) - 1;
  return tour_[better(table_[level][a], table_[level][b + 1 - (1u << level)])];
}

}  // namespace katka
