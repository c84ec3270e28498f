#include "katka/grid.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace katka {

ContextGrid::ContextGrid(std::vector<GridPoint> points, Aggregate aggregate, std::uint32_t width,
                         std::uint32_t height)
    : aggregate_(aggregate), width_(width), height_(height), points_(std::move(points)) {
  std::sort(points_.begin(), points_.end(), [](const GridPoint& a, const GridPoint& b) {
    return a.x != b.x ? a.x < b.x : a.y < b.y;
  });
  std::uint32_t max_x = 0;
  std::uint32_t max_y = 0;
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const GridPoint& p = points_[i];
    if (p.x == 0 || p.y == 0) {
      throw std::invalid_argument("grid coordinates are 1-based");
    }
    if (i > 0 && points_[i - 1].x == p.x && points_[i - 1].y == p.y) {
      throw std::invalid_argument("duplicate grid point (" + std::to_string(p.x) + ", " +
                                  std::to_string(p.y) + ")");
    }
    max_x = std::max(max_x, p.x);
    max_y = std::max(max_y, p.y);
  }
  if (width_ == 0) {
    width_ = max_x;
  }
  if (height_ == 0) {
    height_ = max_y;
  }
  if (max_x > width_ || max_y > height_) {
    throw std::invalid_argument("grid point outside the grid dimensions");
  }
  if (!points_.empty()) {
    root_ = build_node(0, static_cast<std::uint32_t>(points_.size()));
  }
}

std::uint32_t ContextGrid::build_node(std::uint32_t begin, std::uint32_t end) {
  Node node;
  node.begin = begin;
  node.end = end;
  if (end - begin > 1) {
    std::uint32_t mid = begin + (end - begin) / 2;
    node.left = build_node(begin, mid);
    node.right = build_node(mid, end);
  }

  const std::uint32_t n = end - begin;
  node.offset = static_cast<std::uint32_t>(ys_.size());
  node.tree = static_cast<std::uint32_t>(seg_.size());

  ys_.resize(ys_.size() + n);
  seg_.resize(seg_.size() + 2 * n);
  if (n == 1) {
    ys_[node.offset] = points_[begin].y;
    seg_[node.tree + 1] = points_[begin].label;
  } else {
    // Merge the children's y-sorted runs.
    const Node& l = nodes_[node.left];
    const Node& r = nodes_[node.right];
    const std::uint32_t ln = l.end - l.begin;
    const std::uint32_t rn = r.end - r.begin;
    std::uint32_t i = 0, j = 0;
    for (std::uint32_t out = 0; out < n; ++out) {
      bool take_left = j == rn || (i < ln && ys_[l.offset + i] <= ys_[r.offset + j]);
      if (take_left) {
        ys_[node.offset + out] = ys_[l.offset + i];
        seg_[node.tree + n + out] = seg_[l.tree + ln + i];
        ++i;
      } else {
        ys_[node.offset + out] = ys_[r.offset + j];
        seg_[node.tree + n + out] = seg_[r.tree + rn + j];
        ++j;
      }
    }
  }
  for (std::uint32_t i = n; i-- > 1;) {
    seg_[node.tree + i] = combine(seg_[node.tree + 2 * i], seg_[node.tree + 2 * i + 1]);
  }

  nodes_.push_back(node);
  return static_cast<std::uint32_t>(nodes_.size() - 1);
}

std::optional<VertexNumber> ContextGrid::node_range(const Node& node, std::uint32_t y1,
                                                    std::uint32_t y2) const {
  const std::uint32_t n = node.end - node.begin;
  auto ys_begin = ys_.begin() + node.offset;
  auto ys_end = ys_begin + n;
  std::uint32_t lo = static_cast<std::uint32_t>(std::lower_bound(ys_begin, ys_end, y1) - ys_begin);
  std::uint32_t hi = static_cast<std::uint32_t>(std::upper_bound(ys_begin, ys_end, y2) - ys_begin);
  if (lo >= hi) {
    return std::nullopt;
  }
  const VertexNumber* seg = seg_.data() + node.tree;
  std::optional<VertexNumber> best;
  for (lo += n, hi += n; lo < hi; lo >>= 1, hi >>= 1) {
    if (lo & 1) {
      best = best ? combine(*best, seg[lo]) : seg[lo];
      ++lo;
    }
    if (hi & 1) {
      --hi;
      best = best ? combine(*best, seg[hi]) : seg[hi];
    }
  }
  return best;
}

void ContextGrid::query_node(std::uint32_t id, std::uint32_t lo, std::uint32_t hi,
                             std::uint32_t y1, std::uint32_t y2,
                             std::optional<VertexNumber>& best) const {
  const Node& node = nodes_[id];
  if (hi <= node.begin || node.end <= lo) {
    return;
  }
  if (lo <= node.begin && node.end <= hi) {
    if (auto v = node_range(node, y1, y2)) {
      best = best ? combine(*best, *v) : *v;
    }
    return;
  }
  query_node(node.left, lo, hi, y1, y2, best);
  query_node(node.right, lo, hi, y1, y2, best);
}

std::optional<VertexNumber> ContextGrid::range_best(std::uint32_t x1, std::uint32_t x2,
                                                    std::uint32_t y1, std::uint32_t y2) const {
  if (points_.empty() || x1 > x2 || y1 > y2) {
    return std::nullopt;
  }
  auto lo = std::lower_bound(points_.begin(), points_.end(), x1,
                             [](const GridPoint& p, std::uint32_t x) { return p.x < x; }) -
            points_.begin();
  auto hi = std::upper_bound(points_.begin(), points_.end(), x2,
                             [](std::uint32_t x, const GridPoint& p) { return x < p.x; }) -
            points_.begin();
  if (lo >= hi) {
    return std::nullopt;
  }
  std::optional<VertexNumber> best;
  query_node(root_, static_cast<std::uint32_t>(lo), static_cast<std::uint32_t>(hi), y1, y2, best);
  return best;
}

}  // namespace katka
