#include "daccbs/factorization.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

namespace daccbs {

DisjointSet::DisjointSet(std::size_t n) : parent_(n), size_(n, 1)
{
  std::iota(parent_.begin(), parent_.end(), 0);
}

std::size_t DisjointSet::find(std::size_t x)
{
  while (parent_[x] != x) {
    parent_[x] = parent_[parent_[x]];
    x = parent_[x];
  }
  return x;
}

bool DisjointSet::unite(std::size_t a, std::size_t b)
{
  a = find(a);
  b = find(b);
  if (a == b) return false;
  if (size_[a] < size_[b]) std::swap(a, b);
  parent_[b] = a;
  size_[a] += size_[b];
  return true;
}

bool ReachableRegion::contains(VertexId v) const
{
  return std::binary_search(vertices.begin(), vertices.end(), v);
}

bool ReachableRegion::subset_of(const ReachableRegion& outer) const
{
  return std::includes(outer.vertices.begin(), outer.vertices.end(), vertices.begin(), vertices.end());
}

Cost slackness(const MapfInstance& instance, const std::vector<AgentId>& group, Cost budget,
               const std::vector<VertexId>& positions)
{
  Cost lower = 0;
  for (auto a : group) lower = sat_add(lower, instance.gamma(a)[positions[a]]);
  if (budget == kInfinity) return kInfinity;
  const Cost s = budget - lower;
  if (s < 0)
    throw DefectError("budget " + std::to_string(budget) + " below the shortest-path bound " + std::to_string(lower));
  return s;
}

ReachableRegion reachable_region(const MapfInstance& instance, AgentId agent, VertexId position, Cost slack)
{
  if (slack < 0) throw ContractViolation("negative slack");
  const auto& graph = instance.graph();
  const auto& gamma = instance.gamma(agent);
  const VertexId goal = instance.goal(agent);
  const auto from = distance_from(graph, position);
  const auto from_goal = distance_from(graph, goal);
  const Cost base = gamma[position];
  ReachableRegion r{agent, {}};
  for (VertexId v = 0; v < static_cast<VertexId>(graph.vertex_count()); ++v) {
    if (!is_finite(from[v]) || !is_finite(gamma[v])) continue;
    Cost reach = from[v];
    if (v != goal && is_finite(from_goal[v])) reach = std::min(reach, base + from_goal[v] - 1);
    if (slack == kInfinity || reach + gamma[v] - base <= slack) r.vertices.push_back(v);
  }
  return r;
}

bool regions_intersect(const ReachableRegion& a, const ReachableRegion& b)
{
  auto i = a.vertices.begin();
  auto j = b.vertices.begin();
  while (i != a.vertices.end() && j != b.vertices.end()) {
    if (*i == *j) return true;
    if (*i < *j)
      ++i;
    else
      ++j;
  }
  return false;
}

GroupPartition partition(const std::vector<ReachableRegion>& regions, std::size_t vertex_count)
{
  DisjointSet dsu(regions.size());
  std::vector<std::size_t> owner(vertex_count, regions.size());
  for (std::size_t i = 0; i < regions.size(); ++i)
    for (auto v : regions[i].vertices) {
      if (owner[v] == regions.size())
        owner[v] = i;
      else
        dsu.unite(owner[v], i);
    }

  std::map<std::size_t, std::vector<AgentId>> by_root;
  for (std::size_t i = 0; i < regions.size(); ++i) by_root[dsu.find(i)].push_back(regions[i].agent);
  GroupPartition out;
  for (auto& [root, members] : by_root) {
    std::sort(members.begin(), members.end());
    out.groups.push_back(std::move(members));
  }
  std::sort(out.groups.begin(), out.groups.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return out;
}

bool should_refactor(const SlacknessRecord& record, Cost current_slack, Cost threshold)
{
  if (record.slack_at_last_factorization == kInfinity) return current_slack != kInfinity;
  return record.slack_at_last_factorization - current_slack >= threshold;
}

}  // namespace daccbs
