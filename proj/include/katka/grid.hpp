#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "katka/model.hpp"

namespace katka {

enum class Aggregate : std::uint8_t { min = 0, max = 1 };

struct GridPoint {
  std::uint32_t x = 0;  // 1-based co-lex rank of the phrase suffix
  std::uint32_t y = 0;  // 1-based lex rank of the boundary prefix
  VertexNumber label = 0;
  bool operator==(const GridPoint&) const = default;
};

/*
 * Static labeled point set answering min (or max) over axis-aligned boxes.
 *
 * Points are kept sorted by x in a balanced binary decomposition. Each node
 * of the decomposition stores its points ordered by y together with a small
 * segment tree over their labels, so a box query visits O(log z) nodes and
 * spends O(log z) in each.
 */
class ContextGrid {
 public:
  ContextGrid() = default;
  // Throws std::invalid_argument on repeated coordinates or points outside
  // [1, width] x [1, height]. Zero dimensions are taken from the points.
  ContextGrid(std::vector<GridPoint> points, Aggregate aggregate, std::uint32_t width = 0,
              std::uint32_t height = 0);

  Aggregate aggregate() const { return aggregate_; }
  std::uint32_t width() const { return width_; }
  std::uint32_t height() const { return height_; }
  std::size_t point_count() const { return points_.size(); }
  // Points in (x, y) order.
  std::span<const GridPoint> points() const { return points_; }

  // Aggregate over points with x1 <= x <= x2 and y1 <= y <= y2; nullopt when
  // the box holds no point (including inverted ranges).
  std::optional<VertexNumber> range_best(std::uint32_t x1, std::uint32_t x2, std::uint32_t y1,
                                         std::uint32_t y2) const;

 private:
  struct Node {
    std::uint32_t begin = 0;  // range of points_ covered
    std::uint32_t end = 0;
    std::uint32_t left = 0;  // child node ids, unused for a single point
    std::uint32_t right = 0;
    std::uint32_t offset = 0;  // into ys_ (size end - begin)
    std::uint32_t tree = 0;    // into seg_ (size 2 * (end - begin))
  };

  std::uint32_t build_node(std::uint32_t begin, std::uint32_t end);
  void query_node(std::uint32_t id, std::uint32_t lo, std::uint32_t hi, std::uint32_t y1,
                  std::uint32_t y2, std::optional<VertexNumber>& best) const;
  std::optional<VertexNumber> node_range(const Node& node, std::uint32_t y1,
                                         std::uint32_t y2) const;
  VertexNumber combine(VertexNumber a, VertexNumber b) const {
    return aggregate_ == Aggregate::min ? (a < b ? a : b) : (a < b ? b : a);
  }

  Aggregate aggregate_ = Aggregate::min;
  std::uint32_t width_ = 0;
  std::uint32_t height_ = 0;
  std::vector<GridPoint> points_;
  std::vector<Node> nodes_;
  std::uint32_t root_ = 0;
  std::vector<std::uint32_t> ys_;
  std::vector<VertexNumber> seg_;
};

inline ContextGrid build_grid(std::vector<GridPoint> points, Aggregate aggregate,
                              std::uint32_t width = 0, std::uint32_t height = 0) {
  return ContextGrid(std::move(points), aggregate, width, height);
}

inline std::optional<VertexNumber> range_best(const ContextGrid& grid, std::uint32_t x1,
                                              std::uint32_t x2, std::uint32_t y1,
                                              std::uint32_t y2) {
  return grid.range_best(x1, x2, y1, y2);
}

}  // namespace katka
