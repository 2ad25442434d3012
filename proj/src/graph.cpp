#include "daccbs/graph.hpp"

#include <algorithm>
#include <deque>
#include <string>

namespace daccbs {

Graph::Graph(std::vector<std::vector<VertexId>> adjacency) : adjacency_(std::move(adjacency))
{
  const auto n = static_cast<VertexId>(adjacency_.size());
  reverse_.assign(adjacency_.size(), {});
  for (VertexId v = 0; v < n; ++v) {
    auto& adj = adjacency_[v];
    std::sort(adj.begin(), adj.end());
    if (std::adjacent_find(adj.begin(), adj.end()) != adj.end())
      throw InstanceError("duplicate neighbor at vertex " + std::to_string(v));
    if (!std::binary_search(adj.begin(), adj.end(), v))
      throw InstanceError("vertex " + std::to_string(v) + " lacks its self-loop");
    for (auto w : adj) {
      if (w < 0 || w >= n)
        throw InstanceError("neighbor id " + std::to_string(w) + " out of range");
      reverse_[w].push_back(v);
    }
  }
  symmetric_ = true;
  for (VertexId v = 0; v < n && symmetric_; ++v)
    for (auto w : adjacency_[v])
      if (!adjacent(w, v)) {
        symmetric_ = false;
        break;
      }
}

Graph Graph::grid(int height, int width, const std::vector<bool>& passable)
{
  if (height < 0 || width < 0 || passable.size() != static_cast<std::size_t>(height) * width)
    throw InstanceError("grid dimensions do not match cell mask");

  std::vector<VertexId> index(passable.size(), kNoVertex);
  std::vector<Cell> coords;
  for (int r = 0; r < height; ++r)
    for (int c = 0; c < width; ++c)
      if (passable[r * width + c]) {
        index[r * width + c] = static_cast<VertexId>(coords.size());
        coords.push_back({r, c});
      }

  std::vector<std::vector<VertexId>> adj(coords.size());
  constexpr int kDr[] = {-1, 0, 0, 1};
  constexpr int kDc[] = {0, -1, 1, 0};
  for (std::size_t v = 0; v < coords.size(); ++v) {
    adj[v].push_back(static_cast<VertexId>(v));
    for (int k = 0; k < 4; ++k) {
      const int r = coords[v].row + kDr[k];
      const int c = coords[v].col + kDc[k];
      if (r < 0 || r >= height || c < 0 || c >= width) continue;
      if (auto w = index[r * width + c]; w != kNoVertex) adj[v].push_back(w);
    }
  }

  Graph g(std::move(adj));
  g.coords_ = std::move(coords);
  g.cell_index_ = std::move(index);
  g.height_ = height;
  g.width_ = width;
  return g;
}

bool Graph::adjacent(VertexId u, VertexId w) const
{
  const auto& adj = adjacency_[u];
  return std::binary_search(adj.begin(), adj.end(), w);
}

std::optional<VertexId> Graph::vertex_at(Cell c) const
{
  if (c.row < 0 || c.row >= height_ || c.col < 0 || c.col >= width_) return std::nullopt;
  const auto v = cell_index_[c.row * width_ + c.col];
  if (v == kNoVertex) return std::nullopt;
  return v;
}

namespace {

template <class NextFn>
std::vector<Cost> bfs(std::size_t n, VertexId anchor, NextFn next)
{
  std::vector<Cost> dist(n, kInfinity);
  std::deque<VertexId> queue;
  dist[anchor] = 0;
  queue.push_back(anchor);
  while (!queue.empty()) {
    const auto v = queue.front();
    queue.pop_front();
    for (auto w : next(v)) {
      if (dist[w] != kInfinity) continue;
      dist[w] = dist[v] + 1;
      queue.push_back(w);
    }
  }
  return dist;
}

void require_vertex(const Graph& graph, VertexId v)
{
  if (!graph.valid(v)) throw ContractViolation("vertex id " + std::to_string(v) + " out of range");
}

}  // namespace

DistanceField goal_distance_field(const Graph& graph, VertexId goal)
{
  require_vertex(graph, goal);
  auto values = bfs(graph.vertex_count(), goal, [&](VertexId v) { return graph.predecessors(v); });
  return {DistanceField::Kind::ToGoal, goal, std::move(values)};
}

DistanceField distance_from(const Graph& graph, VertexId source)
{
  require_vertex(graph, source);
  auto values = bfs(graph.vertex_count(), source, [&](VertexId v) { return graph.neighbors(v); });
  return {DistanceField::Kind::FromVertex, source, std::move(values)};
}

}  // namespace daccbs
