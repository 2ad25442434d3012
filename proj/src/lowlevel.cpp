#include "daccbs/lowlevel.hpp"

#include <deque>
#include <string>

namespace daccbs {

void ConstraintSet::insert(const Constraint& c)
{
  if (c.time < 0) throw ContractViolation("constraint with negative time");
  if (c.kind == Constraint::Kind::Vertex) {
    if (vertex_.insert(key(c.time, c.to, 0)).second) ++size_;
  } else {
    if (edge_.insert(key(c.time, c.from, c.to)).second) ++size_;
  }
  last_time_ = std::max(last_time_, c.horizon());
}

bool satisfies(const Trajectory& traj, const std::vector<Constraint>& constraints)
{
  for (const auto& c : constraints) {
    if (c.agent != traj.agent) continue;
    if (c.kind == Constraint::Kind::Vertex) {
      if (static_cast<std::size_t>(c.time) < traj.length() && traj.vertices[c.time] == c.to) return false;
    } else if (static_cast<std::size_t>(c.time) + 1 < traj.length() && traj.vertices[c.time] == c.from &&
               traj.vertices[c.time + 1] == c.to) {
      return false;
    }
  }
  return true;
}

VertexId greedy_step(const Graph& graph, VertexId v, const DistanceField& gamma)
{
  if (gamma[v] == 0) return v;
  for (auto w : graph.neighbors(v))
    if (gamma[w] != kInfinity && gamma[w] + 1 == gamma[v]) return w;
  return v;  // unreachable goal: stay put
}

namespace {

// Exact optimum over the constrained window [0, last], lexicographically
// smallest among optimal walks. Returns the walk v_0..v_last.
std::optional<std::vector<VertexId>> constrained_window(const Graph& graph, VertexId start,
                                                        const ConstraintSet& cs, int last,
                                                        const DistanceField& gamma)
{
  if (cs.forbids_vertex(0, start)) return std::nullopt;
  if (last == 0) return std::vector<VertexId>{start};

  // vertices reachable within `last` steps, with their earliest arrival
  std::vector<int> local(graph.vertex_count(), -1);
  std::vector<VertexId> verts;
  std::vector<int> depth;
  local[start] = 0;
  verts.push_back(start);
  depth.push_back(0);
  for (std::size_t head = 0; head < verts.size(); ++head) {
    const auto v = verts[head];
    if (depth[head] == last) continue;
    for (auto w : graph.neighbors(v)) {
      if (local[w] != -1) continue;
      local[w] = static_cast<int>(verts.size());
      verts.push_back(w);
      depth.push_back(depth[head] + 1);
    }
  }

  const VertexId goal = gamma.anchor();
  const std::size_t n = verts.size();
  // cost-to-go including the running cost at t
  std::vector<Cost> togo(static_cast<std::size_t>(last + 1) * n, kInfinity);
  auto at = [&](int t, std::size_t i) -> Cost& { return togo[static_cast<std::size_t>(t) * n + i]; };

  for (std::size_t i = 0; i < n; ++i)
    if (!cs.forbids_vertex(last, verts[i])) at(last, i) = gamma[verts[i]];

  for (int t = last - 1; t >= 0; --t) {
    for (std::size_t i = 0; i < n && depth[i] <= t; ++i) {
      const auto v = verts[i];
      if (cs.forbids_vertex(t, v)) continue;
      Cost best = kInfinity;
      for (auto w : graph.neighbors(v)) {
        if (cs.forbids_edge(t, v, w)) continue;
        best = std::min(best, at(t + 1, local[w]));
      }
      at(t, i) = sat_add(v == goal ? 0 : 1, best);
    }
  }
  if (at(0, 0) == kInfinity) return std::nullopt;

  std::vector<VertexId> walk{start};
  walk.reserve(last + 1);
  for (int t = 0; t < last; ++t) {
    const auto v = walk.back();
    const Cost here = at(t, local[v]);
    const Cost step = v == goal ? 0 : 1;
    VertexId next = kNoVertex;
    for (auto w : graph.neighbors(v)) {
      if (cs.forbids_edge(t, v, w)) continue;
      if (sat_add(step, at(t + 1, local[w])) == here) {
        next = w;
        break;
      }
    }
    if (next == kNoVertex) throw DefectError("constrained planner lost its optimal successor");
    walk.push_back(next);
  }
  return walk;
}

void check_agent_start(const Graph& graph, VertexId start, const DistanceField& gamma)
{
  if (!graph.valid(start)) throw ContractViolation("invalid start vertex " + std::to_string(start));
  if (gamma.values().size() != graph.vertex_count()) throw ContractViolation("gamma field size mismatch");
}

}  // namespace

std::optional<Trajectory> plan_constrained(const Graph& graph, AgentId agent, VertexId start,
                                           const ConstraintSet& constraints, int horizon,
                                           const DistanceField& gamma)
{
  check_agent_start(graph, start, gamma);
  if (horizon < 0) throw ContractViolation("negative horizon");
  if (constraints.last_time() > horizon)
    throw ContractViolation("constraint at t=" + std::to_string(constraints.last_time()) + " beyond horizon " +
                            std::to_string(horizon));
  auto walk = constrained_window(graph, start, constraints, constraints.last_time(), gamma);
  if (!walk) return std::nullopt;
  walk->reserve(horizon + 1);
  while (static_cast<int>(walk->size()) <= horizon) walk->push_back(greedy_step(graph, walk->back(), gamma));
  return Trajectory{agent, std::move(*walk)};
}

std::optional<Trajectory> plan_to_goal(const Graph& graph, AgentId agent, VertexId start,
                                       const ConstraintSet& constraints, const DistanceField& gamma)
{
  check_agent_start(graph, start, gamma);
  auto walk = constrained_window(graph, start, constraints, constraints.last_time(), gamma);
  if (!walk) return std::nullopt;
  if (!is_finite(gamma[walk->back()])) return std::nullopt;
  while (gamma[walk->back()] != 0) walk->push_back(greedy_step(graph, walk->back(), gamma));
  return Trajectory{agent, std::move(*walk)};
}

}  // namespace daccbs
