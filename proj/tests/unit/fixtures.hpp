// small hand-built graphs shared by the unit tests
#pragma once

#include <string>
#include <vector>

#include "daccbs/instance.hpp"

namespace fx {

using namespace daccbs;

// v0 - v1 - ... - v{n-1}
inline Graph chain(int n)
{
  std::vector<std::vector<VertexId>> adj(n);
  for (int v = 0; v < n; ++v) {
    adj[v].push_back(v);
    if (v > 0) adj[v].push_back(v - 1);
    if (v + 1 < n) adj[v].push_back(v + 1);
  }
  return Graph(adj);
}

inline Graph open_grid(int h, int w)
{
  return Graph::grid(h, w, std::vector<bool>(static_cast<std::size_t>(h) * w, true));
}

inline VertexId at(const Graph& g, int row, int col)
{
  return *g.vertex_at({row, col});
}

// a1: (0,1) -> (2,1), a2: (1,0) -> (1,2) on an open 3x3 grid
inline MapfInstance cross()
{
  auto g = open_grid(3, 3);
  std::vector<VertexId> s{at(g, 0, 1), at(g, 1, 0)};
  std::vector<VertexId> t{at(g, 2, 1), at(g, 1, 2)};
  return MapfInstance(g, s, t);
}

// two separate chains of 4 and 5 vertices: agent 0 needs 3 steps, agent 1 needs 4
inline MapfInstance disjoint_chains()
{
  std::vector<std::vector<VertexId>> adj(9);
  auto link = [&](int a, int b) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  };
  for (int v = 0; v < 9; ++v) adj[v].push_back(v);
  for (int v = 0; v < 3; ++v) link(v, v + 1);
  for (int v = 4; v < 8; ++v) link(v, v + 1);
  return MapfInstance(Graph(adj), {0, 4}, {3, 8});
}

// one agent per separate chain, walking from the first to the last vertex of
// its chain; a chain of k vertices costs k - 1
inline MapfInstance separate_chains(const std::vector<int>& sizes)
{
  std::vector<std::vector<VertexId>> adj;
  std::vector<VertexId> s, t;
  for (int k : sizes) {
    const int base = static_cast<int>(adj.size());
    for (int i = 0; i < k; ++i) {
      std::vector<VertexId> nb{base + i};
      if (i > 0) nb.push_back(base + i - 1);
      if (i + 1 < k) nb.push_back(base + i + 1);
      adj.push_back(nb);
    }
    s.push_back(base);
    t.push_back(base + k - 1);
  }
  return MapfInstance(Graph(adj), s, t);
}

inline MapfInstance chain_agent()
{
  return MapfInstance(chain(5), {0}, {4});
}

}  // namespace fx
