/*
 * reflexive directed graph and BFS distance fields
 */
#pragma once

#include <optional>
#include <span>
#include <vector>

#include "daccbs/common.hpp"

namespace daccbs {

struct Cell {
  int row = 0;
  int col = 0;
  bool operator==(const Cell&) const = default;
};

class Graph {
 public:
  Graph() = default;

  // adjacency[v] lists out-neighbors of v; v itself must be present exactly
  // once. Lists are stored sorted by vertex id.
  explicit Graph(std::vector<std::vector<VertexId>> adjacency);

  // 4-connected grid; passable[r * width + c] marks vertices, ids assigned
  // row-major over passable cells
  static Graph grid(int height, int width, const std::vector<bool>& passable);

  std::size_t vertex_count() const { return adjacency_.size(); }
  std::span<const VertexId> neighbors(VertexId v) const { return adjacency_[v]; }
  std::span<const VertexId> predecessors(VertexId v) const { return reverse_[v]; }
  bool adjacent(VertexId u, VertexId w) const;
  bool valid(VertexId v) const { return v >= 0 && static_cast<std::size_t>(v) < vertex_count(); }

  bool is_grid() const { return height_ > 0; }
  bool symmetric() const { return symmetric_; }
  int height() const { return height_; }
  int width() const { return width_; }
  // grid only
  Cell cell(VertexId v) const { return coords_[v]; }
  std::optional<VertexId> vertex_at(Cell c) const;

  bool operator==(const Graph& other) const
  {
    return adjacency_ == other.adjacency_ && coords_ == other.coords_;
  }

 private:
  std::vector<std::vector<VertexId>> adjacency_;
  std::vector<std::vector<VertexId>> reverse_;
  std::vector<Cell> coords_;
  std::vector<VertexId> cell_index_;  // height*width, kNoVertex when blocked
  int height_ = 0;
  int width_ = 0;
  bool symmetric_ = false;
};

class DistanceField {
 public:
  enum class Kind { ToGoal, FromVertex };

  DistanceField() = default;
  DistanceField(Kind kind, VertexId anchor, std::vector<Cost> values)
      : kind_(kind), anchor_(anchor), values_(std::move(values))
  {
  }

  Kind kind() const { return kind_; }
  VertexId anchor() const { return anchor_; }
  Cost operator[](VertexId v) const { return values_[v]; }
  std::span<const Cost> values() const { return values_; }

 private:
  Kind kind_ = Kind::ToGoal;
  VertexId anchor_ = kNoVertex;
  std::vector<Cost> values_;
};

// gamma: shortest path length from every vertex to `goal`
DistanceField goal_distance_field(const Graph& graph, VertexId goal);

// d(source, .): shortest path length from `source` to every vertex
DistanceField distance_from(const Graph& graph, VertexId source);

}  // namespace daccbs
