#include "daccbs/trajectory.hpp"

#include <string>

namespace daccbs {

bool is_valid_walk(const Trajectory& traj, const Graph& graph)
{
  if (traj.vertices.empty()) return false;
  for (auto v : traj.vertices)
    if (!graph.valid(v)) return false;
  for (std::size_t t = 0; t + 1 < traj.vertices.size(); ++t)
    if (!graph.adjacent(traj.vertices[t], traj.vertices[t + 1])) return false;
  return true;
}

std::size_t JointTrajectory::makespan() const
{
  std::size_t m = 0;
  for (const auto& tr : trajectories_) m = std::max(m, tr.length() - 1);
  return m;
}

void JointTrajectory::pad()
{
  const auto len = makespan() + 1;
  for (auto& tr : trajectories_) tr.vertices.resize(len, tr.vertices.back());
}

void JointTrajectory::trim()
{
  if (trajectories_.empty()) return;
  pad();
  auto len = trajectories_.front().length();
  auto moves_at = [&](std::size_t t) {
    for (const auto& tr : trajectories_)
      if (tr.vertices[t] != tr.vertices[t - 1]) return true;
    return false;
  };
  while (len > 1 && !moves_at(len - 1)) --len;
  for (auto& tr : trajectories_) tr.vertices.resize(len);
}

std::vector<VertexId> JointTrajectory::configuration(std::size_t t) const
{
  std::vector<VertexId> q;
  q.reserve(trajectories_.size());
  for (const auto& tr : trajectories_) q.push_back(tr.at(t));
  return q;
}

std::optional<Conflict> detect_first_conflict(const JointTrajectory& joint, int horizon, std::size_t vertex_count)
{
  if (joint.empty()) return std::nullopt;
  ConflictScanner scanner(vertex_count);
  return scanner.first(joint.size(), horizon, [&](std::size_t i, int t) { return joint[i].at(t); });
}

namespace {

Cost padded_prefix_cost(const Trajectory& traj, std::size_t h_r, const DistanceField& gamma)
{
  const VertexId goal = gamma.anchor();
  Cost running = 0;
  for (std::size_t t = 0; t < h_r; ++t)
    if (traj.at(t) != goal) ++running;
  return sat_add(running, gamma[traj.at(h_r)]);
}

}  // namespace

Cost prefix_cost(const Trajectory& traj, std::size_t h_r, const DistanceField& gamma)
{
  if (traj.vertices.empty() || h_r + 1 > traj.length())
    throw ContractViolation("prefix length " + std::to_string(h_r) + " exceeds trajectory");
  return padded_prefix_cost(traj, h_r, gamma);
}

// members shorter than h_r are wait-padded
Cost joint_prefix_cost(const JointTrajectory& joint, std::size_t h_r, std::span<const DistanceField> gammas)
{
  Cost total = 0;
  for (const auto& tr : joint) total = sat_add(total, padded_prefix_cost(tr, h_r, gammas[tr.agent]));
  return total;
}

Cost soc(const JointTrajectory& joint, std::span<const VertexId> goals)
{
  Cost total = 0;
  for (const auto& tr : joint) {
    const VertexId goal = goals[tr.agent];
    if (tr.back() != goal)
      throw ContractViolation("trajectory of agent " + std::to_string(tr.agent) + " does not end at its goal");
    for (auto v : tr.vertices)
      if (v != goal) ++total;
  }
  return total;
}

}  // namespace daccbs
