#include "daccbs/generators.hpp"

#include "daccbs/backup.hpp"

#include <algorithm>
#include <numeric>

namespace daccbs {

Graph empty_grid(int height, int width)
{
  return Graph::grid(height, width, std::vector<bool>(static_cast<std::size_t>(height) * width, true));
}

Graph random_grid(int height, int width, double blocked_ratio, std::mt19937_64& rng)
{
  const auto cells = static_cast<std::size_t>(height) * width;
  std::vector<bool> passable(cells, true);
  std::bernoulli_distribution blocked(blocked_ratio);
  for (std::size_t i = 0; i < cells; ++i) passable[i] = !blocked(rng);

  // keep the largest component
  std::vector<int> comp(cells, -1);
  int best = -1;
  std::size_t best_size = 0;
  int next_id = 0;
  for (std::size_t s = 0; s < cells; ++s) {
    if (!passable[s] || comp[s] != -1) continue;
    std::vector<std::size_t> stack{s};
    comp[s] = next_id;
    std::size_t size = 0;
    while (!stack.empty()) {
      const auto c = stack.back();
      stack.pop_back();
      ++size;
      const int r = static_cast<int>(c) / width;
      const int col = static_cast<int>(c) % width;
      const int nr[] = {r - 1, r + 1, r, r};
      const int nc[] = {col, col, col - 1, col + 1};
      for (int k = 0; k < 4; ++k) {
        if (nr[k] < 0 || nr[k] >= height || nc[k] < 0 || nc[k] >= width) continue;
        const auto w = static_cast<std::size_t>(nr[k]) * width + nc[k];
        if (!passable[w] || comp[w] != -1) continue;
        comp[w] = next_id;
        stack.push_back(w);
      }
    }
    if (size > best_size) {
      best_size = size;
      best = next_id;
    }
    ++next_id;
  }
  for (std::size_t i = 0; i < cells; ++i) passable[i] = passable[i] && comp[i] == best;
  return Graph::grid(height, width, passable);
}

std::optional<MapfInstance> random_instance(const Graph& graph, std::size_t agents, std::mt19937_64& rng)
{
  if (graph.vertex_count() < agents) return std::nullopt;
  std::vector<VertexId> ids(graph.vertex_count());
  std::iota(ids.begin(), ids.end(), 0);
  std::shuffle(ids.begin(), ids.end(), rng);
  std::vector<VertexId> starts(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(agents));
  std::shuffle(ids.begin(), ids.end(), rng);
  std::vector<VertexId> goals(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(agents));
  try {
    return MapfInstance(graph, std::move(starts), std::move(goals));
  } catch (const InstanceError&) {
    return std::nullopt;
  }
}

std::optional<MapfInstance> random_solvable_instance(const Graph& graph, std::size_t agents, std::mt19937_64& rng,
                                                     std::size_t max_nodes, int attempts)
{
  const LacamBackup screen(0, max_nodes);
  for (int k = 0; k < attempts; ++k) {
    auto inst = random_instance(graph, agents, rng);
    if (!inst) return std::nullopt;
    AgentGroup all{{}, inst->starts()};
    for (std::size_t a = 0; a < agents; ++a) all.agents.push_back(static_cast<AgentId>(a));
    try {
      screen.rollout(*inst, all);
      return inst;
    } catch (const BackupFailure&) {
    }
  }
  return std::nullopt;
}

}  // namespace daccbs
