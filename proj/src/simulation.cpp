#include "daccbs/simulation.hpp"

#include <string>
#include <unordered_map>

namespace daccbs {

std::string to_string(EpisodeResult::Termination t)
{
  return t == EpisodeResult::Termination::AllAtGoals ? "all-at-goals" : "step-cap";
}

void validate_movement(const MapfInstance& instance, const std::vector<VertexId>& state, const Movement& movement)
{
  const auto& graph = instance.graph();
  if (movement.size() != state.size()) throw DefectError("movement does not cover every agent");
  std::unordered_map<VertexId, AgentId> arriving;
  for (std::size_t i = 0; i < movement.size(); ++i) {
    const auto& m = movement[i];
    if (m.agent != static_cast<AgentId>(i)) throw DefectError("movement is not ordered by agent id");
    if (m.from != state[m.agent])
      throw DefectError("agent " + std::to_string(m.agent) + " movement does not start at its position");
    if (!graph.valid(m.to) || !graph.adjacent(m.from, m.to))
      throw DefectError("agent " + std::to_string(m.agent) + " moves along a non-edge");
    if (auto [it, fresh] = arriving.emplace(m.to, m.agent); !fresh)
      throw DefectError("vertex conflict between agents " + std::to_string(it->second) + " and " +
                        std::to_string(m.agent));
  }
  std::unordered_map<VertexId, AgentId> occupant;
  for (std::size_t a = 0; a < state.size(); ++a) occupant[state[a]] = static_cast<AgentId>(a);
  for (const auto& m : movement) {
    if (m.from == m.to) continue;
    const auto it = occupant.find(m.to);
    if (it != occupant.end() && movement[it->second].to == m.from)
      throw DefectError("swap conflict between agents " + std::to_string(m.agent) + " and " +
                        std::to_string(it->second));
  }
}

EpisodeResult run_episode(const MapfInstance& instance, const ControllerConfig& config, std::optional<int> step_cap)
{
  Controller controller(instance, config);
  EpisodeResult result;
  result.mode = config.mode;
  result.initial_budget = controller.initial_budget();
  const int cap = step_cap.value_or(static_cast<int>(4 * result.initial_budget + 16));
  if (cap < 1) throw ContractViolation("step cap must be >= 1");

  FleetState state{instance.starts(), 0};
  auto all_at_goals = [&] {
    for (std::size_t a = 0; a < state.positions.size(); ++a)
      if (state.positions[a] != instance.goal(static_cast<AgentId>(a))) return false;
    return true;
  };

  while (!all_at_goals()) {
    if (state.t >= cap) {
      result.termination = EpisodeResult::Termination::StepCap;
      break;
    }
    auto step = controller.plan_step(state.positions, state.t);
    validate_movement(instance, state.positions, step.movement);

    for (std::size_t a = 0; a < state.positions.size(); ++a)
      if (state.positions[a] != instance.goal(static_cast<AgentId>(a))) ++result.soc;
    for (const auto& m : step.movement) state.positions[m.agent] = m.to;

    if (step.telemetry.budget)
      result.budget_trace.push_back({state.t, *step.telemetry.budget, step.telemetry.improved});
    for (const auto& e : step.telemetry.factorizations) result.factorization_trace.push_back(e);
    result.steps.push_back(std::move(step.telemetry));
    ++state.t;
  }
  result.makespan = state.t;
  result.soc_increment = result.soc - instance.gamma_sum(instance.starts());
  if (config.mode == Mode::Daccbs && result.termination == EpisodeResult::Termination::AllAtGoals &&
      result.soc > result.initial_budget)
    throw DefectError("realized SOC " + std::to_string(result.soc) + " exceeds initial budget " +
                      std::to_string(result.initial_budget));
  return result;
}

Cost soc_increment(const EpisodeResult& result, const MapfInstance& instance)
{
  if (result.termination != EpisodeResult::Termination::AllAtGoals)
    throw ContractViolation("SOC increment is undefined for an episode that hit its step cap");
  return result.soc - instance.gamma_sum(instance.starts());
}

}  // namespace daccbs
