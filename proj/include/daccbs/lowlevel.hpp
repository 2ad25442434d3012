/*
 * single-agent space-time planning under vertex / edge constraints
 */
#pragma once

#include <optional>
#include <unordered_set>
#include <vector>

#include "daccbs/trajectory.hpp"

namespace daccbs {

struct Constraint {
  enum class Kind { Vertex, Edge };
  Kind kind = Kind::Vertex;
  AgentId agent = kNoAgent;
  // vertex: forbidden to be at `to` at `time`
  // edge: forbidden to traverse (from -> to) departing at `time`
  int time = 0;
  VertexId from = kNoVertex;
  VertexId to = kNoVertex;

  static Constraint vertex(AgentId a, int t, VertexId v) { return {Kind::Vertex, a, t, kNoVertex, v}; }
  static Constraint edge(AgentId a, int t, VertexId u, VertexId w) { return {Kind::Edge, a, t, u, w}; }

  // first timestep from which this constraint no longer restricts anything
  int horizon() const { return kind == Kind::Vertex ? time : time + 1; }

  bool operator==(const Constraint&) const = default;
};

// Constraints of one agent, hashed for O(1) lookups during search.
class ConstraintSet {
 public:
  ConstraintSet() = default;
  explicit ConstraintSet(const std::vector<Constraint>& constraints) { insert(constraints); }

  void insert(const Constraint& c);
  void insert(const std::vector<Constraint>& cs)
  {
    for (const auto& c : cs) insert(c);
  }

  bool empty() const { return size_ == 0; }
  std::size_t size() const { return size_; }
  // largest timestep any constraint restricts (edge constraints count their
  // arrival time); 0 when empty
  int last_time() const { return last_time_; }

  bool forbids_vertex(int t, VertexId v) const { return vertex_.count(key(t, v, 0)) != 0; }
  bool forbids_edge(int t, VertexId u, VertexId w) const
  {
    return !edge_.empty() && edge_.count(key(t, u, w)) != 0;
  }

 private:
  static std::uint64_t key(int t, VertexId u, VertexId w)
  {
    return (static_cast<std::uint64_t>(t) << 42) ^ (static_cast<std::uint64_t>(u) << 21) ^
           static_cast<std::uint64_t>(w);
  }

  std::unordered_set<std::uint64_t> vertex_;
  std::unordered_set<std::uint64_t> edge_;
  std::size_t size_ = 0;
  int last_time_ = 0;
};

bool satisfies(const Trajectory& traj, const std::vector<Constraint>& constraints);

// Trajectory of exactly horizon+1 vertices satisfying `constraints` and
// minimizing sum_{t<horizon} p(v_t) + gamma(v_horizon). Among optimal ones the
// result follows the smallest-id gamma-greedy step after the last constrained
// timestep and is lexicographically smallest before it. nullopt if none exists.
std::optional<Trajectory> plan_constrained(const Graph& graph, AgentId agent, VertexId start,
                                           const ConstraintSet& constraints, int horizon,
                                           const DistanceField& gamma);

// Unbounded variant used by full-horizon search: optimal up to the last
// constrained timestep, then greedy until the goal is reached.
std::optional<Trajectory> plan_to_goal(const Graph& graph, AgentId agent, VertexId start,
                                       const ConstraintSet& constraints, const DistanceField& gamma);

// smallest-id neighbor that decreases gamma; v itself at the goal
VertexId greedy_step(const Graph& graph, VertexId v, const DistanceField& gamma);

}  // namespace daccbs
