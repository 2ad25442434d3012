/*
 * trajectories, padded joint trajectories, conflicts, and the finite-horizon cost
 *
 * Cost convention: the running cost p(v) is 1 at every timestep an agent is
 * not on its goal and 0 otherwise, evaluated literally (leaving the goal and
 * coming back is charged only for the off-goal steps). The terminal cost of
 * an h-step prefix is gamma(v_h).
 */
#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <vector>

#include "daccbs/graph.hpp"

namespace daccbs {

struct Trajectory {
  AgentId agent = kNoAgent;
  std::vector<VertexId> vertices;

  std::size_t length() const { return vertices.size(); }
  // wait-padded access past the end
  VertexId at(std::size_t t) const { return t < vertices.size() ? vertices[t] : vertices.back(); }
  VertexId back() const { return vertices.back(); }

  bool operator==(const Trajectory&) const = default;
};

// consecutive entries adjacent, non-empty
bool is_valid_walk(const Trajectory& traj, const Graph& graph);

class JointTrajectory {
 public:
  JointTrajectory() = default;
  explicit JointTrajectory(std::vector<Trajectory> trajectories) : trajectories_(std::move(trajectories)) {}

  std::size_t size() const { return trajectories_.size(); }
  bool empty() const { return trajectories_.empty(); }
  const Trajectory& operator[](std::size_t i) const { return trajectories_[i]; }
  Trajectory& operator[](std::size_t i) { return trajectories_[i]; }
  const std::vector<Trajectory>& trajectories() const { return trajectories_; }
  auto begin() const { return trajectories_.begin(); }
  auto end() const { return trajectories_.end(); }

  // common last timestep after padding; 0 for an empty fleet
  std::size_t makespan() const;
  // equalize lengths with terminal waits
  void pad();
  // drop trailing timesteps where nobody moves
  void trim();
  // configuration at time t (padded), in member order
  std::vector<VertexId> configuration(std::size_t t) const;

  bool operator==(const JointTrajectory&) const = default;

 private:
  std::vector<Trajectory> trajectories_;
};

struct Conflict {
  enum class Kind { Vertex, Edge };
  Kind kind = Kind::Vertex;
  // member indices with first < second for vertex conflicts; for edge
  // conflicts `first` traverses (from -> to)
  std::size_t first = 0;
  std::size_t second = 0;
  int time = 0;
  VertexId from = kNoVertex;  // edge only
  VertexId to = kNoVertex;    // vertex location, or edge head for `first`

  bool operator==(const Conflict&) const = default;
};

// Scans t = 0..horizon over `count` padded trajectories addressed through
// `pos(i, t)`. Order: earliest time; vertex before edge at equal time;
// lexicographically smallest (first, second) member pair.
class ConflictScanner {
 public:
  explicit ConflictScanner(std::size_t vertex_count)
      : now_agent_(vertex_count, 0), now_stamp_(vertex_count, -1), prev_agent_(vertex_count, 0),
        prev_stamp_(vertex_count, -1)
  {
  }

  template <class PosFn>
  std::optional<Conflict> first(std::size_t count, int horizon, PosFn pos)
  {
    std::optional<Conflict> found;
    scan(count, horizon, pos, [&](const Conflict& c) {
      found = c;
      return false;
    });
    return found;
  }

  // number of conflicting (pair, time) events within the horizon
  template <class PosFn>
  std::size_t count(std::size_t count, int horizon, PosFn pos)
  {
    std::size_t n = 0;
    scan(count, horizon, pos, [&](const Conflict&) {
      ++n;
      return true;
    });
    return n;
  }

 private:
  // visit(c) returns whether to continue; for early exit we must still pick
  // the minimal pair within a time slice, so slices are collected first
  template <class PosFn, class Visit>
  void scan(std::size_t count, int horizon, PosFn& pos, Visit visit)
  {
    ++generation_;
    std::vector<Conflict> slice;
    for (int t = 0; t <= horizon; ++t) {
      slice.clear();
      const long stamp = generation_ * 1'000'000L + t;
      // vertex conflicts
      for (std::size_t i = 0; i < count; ++i) {
        const VertexId v = pos(i, t);
        if (now_stamp_[v] == stamp) {
          slice.push_back({Conflict::Kind::Vertex, now_agent_[v], i, t, kNoVertex, v});
        } else {
          now_stamp_[v] = stamp;
          now_agent_[v] = i;
        }
      }
      std::sort(slice.begin(), slice.end(), pair_less);
      for (const auto& c : slice)
        if (!visit(c)) return;
      // edge conflicts against occupancy at t-1
      if (t > 0) {
        slice.clear();
        const long prev = stamp - 1;
        for (std::size_t i = 0; i < count; ++i) {
          const VertexId u = pos(i, t - 1);
          const VertexId w = pos(i, t);
          if (u == w || prev_stamp_[w] != prev) continue;
          const std::size_t k = prev_agent_[w];
          if (k > i && pos(k, t) == u) slice.push_back({Conflict::Kind::Edge, i, k, t, u, w});
        }
        std::sort(slice.begin(), slice.end(), pair_less);
        for (const auto& c : slice)
          if (!visit(c)) return;
      }
      // roll occupancy: prev <- now
      for (std::size_t i = 0; i < count; ++i) {
        const VertexId v = pos(i, t);
        prev_stamp_[v] = stamp;
        prev_agent_[v] = i;
      }
    }
  }

  static bool pair_less(const Conflict& a, const Conflict& b)
  {
    return a.first != b.first ? a.first < b.first : a.second < b.second;
  }

  std::vector<std::size_t> now_agent_;
  std::vector<long> now_stamp_;
  std::vector<std::size_t> prev_agent_;
  std::vector<long> prev_stamp_;
  long generation_ = 0;
};

std::optional<Conflict> detect_first_conflict(const JointTrajectory& joint, int horizon, std::size_t vertex_count);

// sum_{t < h_r} p(v_t) + gamma(v_{h_r}); kInfinity if the terminal is unreachable
Cost prefix_cost(const Trajectory& traj, std::size_t h_r, const DistanceField& gamma);

// gammas indexed by Trajectory::agent
Cost joint_prefix_cost(const JointTrajectory& joint, std::size_t h_r, std::span<const DistanceField> gammas);

// literal sum of off-goal timesteps; goals indexed by Trajectory::agent.
// Throws ContractViolation when a trajectory does not end at its goal.
Cost soc(const JointTrajectory& joint, std::span<const VertexId> goals);

}  // namespace daccbs
