#include "daccbs/certificate.hpp"

#include <string>

namespace daccbs {

std::vector<AgentId> Certificate::agents() const
{
  std::vector<AgentId> out;
  out.reserve(trajectories.size());
  for (const auto& tr : trajectories) out.push_back(tr.agent);
  return out;
}

Cost certificate_cost(const JointTrajectory& joint, const MapfInstance& instance)
{
  return soc(joint, instance.goals());
}

namespace {

bool well_formed(const JointTrajectory& joint, const MapfInstance& instance, std::string* why)
{
  for (const auto& tr : joint) {
    if (!is_valid_walk(tr, instance.graph())) {
      if (why) *why = "agent " + std::to_string(tr.agent) + " trajectory is not a walk";
      return false;
    }
    if (tr.back() != instance.goal(tr.agent)) {
      if (why) *why = "agent " + std::to_string(tr.agent) + " does not end at its goal";
      return false;
    }
  }
  if (detect_first_conflict(joint, static_cast<int>(joint.makespan()), instance.graph().vertex_count())) {
    if (why) *why = "trajectories conflict";
    return false;
  }
  return true;
}

}  // namespace

void validate_certificate(const Certificate& cert, const MapfInstance& instance, const std::vector<VertexId>& positions)
{
  std::string why;
  if (!well_formed(cert.trajectories, instance, &why)) throw DefectError("invalid certificate: " + why);
  for (const auto& tr : cert.trajectories)
    if (tr.vertices.front() != positions[tr.agent])
      throw DefectError("certificate of agent " + std::to_string(tr.agent) + " does not start at its position");
  if (certificate_cost(cert.trajectories, instance) != cert.budget)
    throw DefectError("certificate budget " + std::to_string(cert.budget) + " differs from its cost");
}

Certificate init_certificate(const BackupController& backup, const MapfInstance& instance,
                             const std::vector<VertexId>& positions, const std::vector<AgentId>& group)
{
  AgentGroup g;
  g.agents = group;
  for (auto a : group) g.positions.push_back(positions[a]);
  JointTrajectory joint;
  try {
    joint = backup.rollout(instance, g);
  } catch (const BackupFailure& e) {
    throw DefectError(std::string("backup failed on a feasible instance: ") + e.what());
  }
  joint.pad();
  Certificate cert{std::move(joint), 0};
  cert.budget = certificate_cost(cert.trajectories, instance);
  validate_certificate(cert, instance, positions);
  return cert;
}

Certificate advance(const Certificate& cert, const MapfInstance& instance, const std::vector<VertexId>& executed)
{
  Certificate next;
  std::vector<Trajectory> out;
  out.reserve(cert.trajectories.size());
  Cost spent = 0;
  for (const auto& tr : cert.trajectories) {
    const VertexId expected = tr.at(1);
    if (executed[tr.agent] != expected)
      throw ContractViolation("agent " + std::to_string(tr.agent) + " did not execute its certificate step");
    if (tr.vertices.front() != instance.goal(tr.agent)) ++spent;
    Trajectory rest{tr.agent, {}};
    if (tr.length() > 1)
      rest.vertices.assign(tr.vertices.begin() + 1, tr.vertices.end());
    else
      rest.vertices = tr.vertices;
    out.push_back(std::move(rest));
  }
  next.trajectories = JointTrajectory(std::move(out));
  next.trajectories.trim();
  next.budget = cert.budget - spent;
  return next;
}

std::pair<Certificate, bool> try_improve(const Certificate& cert, JointTrajectory candidate, const MapfInstance& instance)
{
  if (candidate.size() != cert.trajectories.size()) return {cert, false};
  for (std::size_t i = 0; i < candidate.size(); ++i) {
    if (candidate[i].agent != cert.trajectories[i].agent) return {cert, false};
    if (candidate[i].vertices.empty() || candidate[i].vertices.front() != cert.trajectories[i].vertices.front())
      return {cert, false};
  }
  if (!well_formed(candidate, instance, nullptr)) return {cert, false};
  const Cost cost = certificate_cost(candidate, instance);
  if (cost >= cert.budget) return {cert, false};
  candidate.pad();
  return {Certificate{std::move(candidate), cost}, true};
}

std::optional<JointTrajectory> build_candidate(const JointTrajectory& prefix, const BackupController& backup,
                                               const MapfInstance& instance)
{
  if (prefix.empty()) return prefix;
  const auto h = prefix.makespan();
  std::vector<AgentId> agents;
  for (const auto& tr : prefix) agents.push_back(tr.agent);
  const auto terminal = prefix.configuration(h);

  bool at_goals = true;
  for (std::size_t i = 0; i < agents.size(); ++i)
    if (terminal[i] != instance.goal(agents[i])) at_goals = false;

  std::vector<Trajectory> out;
  out.reserve(prefix.size());
  for (const auto& tr : prefix) {
    Trajectory t{tr.agent, {}};
    for (std::size_t k = 0; k <= h; ++k) t.vertices.push_back(tr.at(k));
    out.push_back(std::move(t));
  }
  if (!at_goals) {
    JointTrajectory tail;
    try {
      tail = backup.rollout_suboptimal_tail(instance, agents, terminal);
    } catch (const BackupFailure&) {
      return std::nullopt;
    } catch (const InstanceError&) {
      return std::nullopt;
    }
    for (std::size_t i = 0; i < out.size(); ++i)
      out[i].vertices.insert(out[i].vertices.end(), tail[i].vertices.begin() + 1, tail[i].vertices.end());
  }
  JointTrajectory joint(std::move(out));
  joint.pad();
  return joint;
}

Movement first_movement(const Certificate& cert)
{
  Movement m;
  m.reserve(cert.trajectories.size());
  for (const auto& tr : cert.trajectories) m.push_back({tr.agent, tr.at(0), tr.at(1)});
  return m;
}

}  // namespace daccbs
