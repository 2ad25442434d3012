/*
 * Budget-limited factorization.
 *
 * slack = budget - sum of gamma over the group's agents. Agent a may only
 * ever occupy v under any plan no costlier than the budget if
 *   D(v) = d(x(a), v) + gamma_a(v) - gamma_a(x(a)) <= slack.
 * Standing on the goal is free, so a walk that passes the goal g on its way
 * to v saves one unit; d(x(a), v) is therefore replaced by
 * min(d(x(a), v), gamma_a(x(a)) + d(g, v) - 1) for v != g, which is the
 * exact cheapest visit and equals the plain D whenever that is not shorter.
 * Agents whose regions share no vertex can be planned independently from
 * now on, because valid certificate updates only shrink the regions.
 */
#pragma once

#include <vector>

#include "daccbs/instance.hpp"

namespace daccbs {

// Union-find with path halving and union by size.
class DisjointSet {
 public:
  explicit DisjointSet(std::size_t n);
  std::size_t find(std::size_t x);
  bool unite(std::size_t a, std::size_t b);
  std::size_t size(std::size_t x) { return size_[find(x)]; }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
};

struct SlacknessRecord {
  AgentId group_id = kNoAgent;  // smallest member agent id
  Cost slackness = 0;
  Cost slack_at_last_factorization = kInfinity;  // kInfinity: never factorized
};

struct ReachableRegion {
  AgentId agent = kNoAgent;
  std::vector<VertexId> vertices;  // sorted

  bool contains(VertexId v) const;
  // every vertex of this region is in `outer`
  bool subset_of(const ReachableRegion& outer) const;
};

struct GroupPartition {
  std::vector<std::vector<AgentId>> groups;  // each sorted; ordered by smallest member
};

// positions is the full-fleet state. Throws DefectError if negative.
Cost slackness(const MapfInstance& instance, const std::vector<AgentId>& group, Cost budget,
               const std::vector<VertexId>& positions);

ReachableRegion reachable_region(const MapfInstance& instance, AgentId agent, VertexId position, Cost slack);

bool regions_intersect(const ReachableRegion& a, const ReachableRegion& b);

GroupPartition partition(const std::vector<ReachableRegion>& regions, std::size_t vertex_count);

bool should_refactor(const SlacknessRecord& record, Cost current_slack, Cost threshold);

}  // namespace daccbs
