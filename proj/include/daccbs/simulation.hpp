/*
 * one-shot closed loop: query the controller, validate and apply its
 * movement, repeat until every agent is on its goal or the step cap is hit
 */
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "daccbs/controller.hpp"

namespace daccbs {

struct FleetState {
  std::vector<VertexId> positions;
  int t = 0;
};

struct BudgetRecord {
  int t = 0;
  Cost budget = 0;
  bool improved = false;

  bool operator==(const BudgetRecord&) const = default;
};

struct EpisodeResult {
  enum class Termination { AllAtGoals, StepCap };

  Mode mode = Mode::Daccbs;
  Cost soc = 0;
  Cost soc_increment = 0;
  int makespan = 0;  // executed steps
  Cost initial_budget = 0;
  Termination termination = Termination::AllAtGoals;
  std::vector<StepTelemetry> steps;
  std::vector<BudgetRecord> budget_trace;
  std::vector<FactorizationEvent> factorization_trace;

  bool operator==(const EpisodeResult&) const = default;
};

std::string to_string(EpisodeResult::Termination t);

// Throws DefectError if the movement is not a valid one-step joint move
// from `state` (non-adjacent, mismatched origin, vertex or swap conflict).
void validate_movement(const MapfInstance& instance, const std::vector<VertexId>& state, const Movement& movement);

// default step cap: 4 * B_0 + 16
EpisodeResult run_episode(const MapfInstance& instance, const ControllerConfig& config,
                          std::optional<int> step_cap = std::nullopt);

// realized SOC minus the sum of start gammas; requires an all-at-goals result
Cost soc_increment(const EpisodeResult& result, const MapfInstance& instance);

}  // namespace daccbs
