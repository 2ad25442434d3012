/*
 * Constraint-tree search.
 *
 * run_adaptive is the running-horizon variant: trajectories span a nominal
 * horizon H_max but conflicts are only resolved inside the active prefix
 * [0, h_r]. Every node's trajectories follow a gamma-greedy suffix after their
 * last constrained timestep, and constraints are only ever added at times
 * <= h_r, so a node's prefix cost does not change when h_r grows and the tree
 * is reused across increments.
 *
 * run_classic_cbs is plain full-horizon CBS, used as a reference solver and as
 * the slow-but-tight backup.
 */
#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "daccbs/instance.hpp"
#include "daccbs/lowlevel.hpp"

namespace daccbs {

using Clock = std::chrono::steady_clock;

// agents planned together, with their current vertices (member order)
struct AgentGroup {
  std::vector<AgentId> agents;
  std::vector<VertexId> positions;
};

struct ConstraintTreeNode {
  std::vector<Constraint> constraints;
  std::vector<std::shared_ptr<const Trajectory>> paths;  // member order
  Cost cost = 0;
  std::size_t conflicts = 0;
  std::uint64_t seq = 0;

  // members truncated to [0, upto]
  JointTrajectory prefix(std::size_t upto) const;
  JointTrajectory joint() const;
};

class SearchLimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

ConstraintTreeNode make_root(const MapfInstance& instance, const AgentGroup& group, int horizon_max);

// Scan and cost helpers over a node's member paths.
std::optional<Conflict> find_conflict(const ConstraintTreeNode& node, int horizon, std::size_t vertex_count);
Cost node_cost(const ConstraintTreeNode& node, const MapfInstance& instance, int h_r);

// Two children, each adding one constraint for one of the conflicting
// members; a child whose replan is infeasible is omitted.
std::pair<std::optional<ConstraintTreeNode>, std::optional<ConstraintTreeNode>> expand(
    const ConstraintTreeNode& node, const Conflict& conflict, const MapfInstance& instance,
    const AgentGroup& group, int h_r, int horizon_max);

struct AdaptiveOutcome {
  enum class Reason { Exhausted, ReachedHorizon, Deadline };
  Reason reason = Reason::Exhausted;
  // longest conflict-free prefix length found; 0 means no valid prefix
  int longest_prefix = 0;
  std::shared_ptr<const ConstraintTreeNode> node;  // holder of that prefix
  int final_horizon = 1;
  std::size_t expansions = 0;
  std::size_t dequeues = 0;
};

// (node, h): node's trajectories are conflict-free on [0, h]
using PrefixCallback = std::function<void(const ConstraintTreeNode&, int)>;

AdaptiveOutcome run_adaptive(const MapfInstance& instance, const AgentGroup& group, int horizon_max,
                             Clock::time_point deadline, const PrefixCallback& on_prefix_found);

struct ClassicCbsOptions {
  std::optional<std::size_t> max_expansions;
};

// SOC-optimal conflict-free solution from the group's positions, padded.
// Throws SearchLimitExceeded when max_expansions is hit.
JointTrajectory run_classic_cbs(const MapfInstance& instance, const AgentGroup& group,
                                const ClassicCbsOptions& options = {});
JointTrajectory run_classic_cbs(const MapfInstance& instance, const ClassicCbsOptions& options = {});

}  // namespace daccbs
