/*
 * Per-timestep closed-loop controller.
 *
 * daccbs: each group advances its certificate by the executed step, runs the
 *   running-horizon search under a wall-clock deadline, completes every
 *   conflict-free prefix with a backup tail and keeps the candidate if it is
 *   strictly cheaper, then splits itself when its slack has dropped by at
 *   least the threshold since its last factorization. The executed movement
 *   is always the first step of the certificates.
 * accbs: certificate-free baseline; executes the first step of the longest
 *   conflict-free prefix found, or waits.
 * backup-only: follows the initial backup plan.
 */
#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "daccbs/certificate.hpp"
#include "daccbs/factorization.hpp"

namespace daccbs {

enum class Mode { Daccbs, Accbs, BackupOnly };

std::string to_string(Mode mode);
Mode mode_from_string(const std::string& name);

struct ControllerConfig {
  int horizon_max = 128;
  double step_budget_ms = 100.0;  // t_max
  Cost slack_threshold = 1;
  std::string backup = "lacam-ref";
  Mode mode = Mode::Daccbs;
  std::uint64_t seed = 0;
  bool parallel_groups = true;
  std::size_t threads = 0;  // 0: hardware concurrency
  // re-validate certificates, region shrinkage and cross-group disjointness
  // every step; throws DefectError on violation
  bool check_invariants = false;
};

struct GroupState {
  std::vector<AgentId> agents;  // sorted
  Certificate certificate;
  SlacknessRecord slack_record;

  AgentId id() const { return agents.front(); }
};

struct GroupTelemetry {
  AgentId group_id = kNoAgent;
  std::size_t size = 0;
  int horizon_reached = 0;
  Cost budget = 0;
  bool improved = false;
  std::size_t expansions = 0;

  bool operator==(const GroupTelemetry&) const = default;
};

struct FactorizationEvent {
  int t = 0;
  AgentId group_id = kNoAgent;
  Cost slack = 0;
  std::vector<std::size_t> subgroup_sizes;

  bool operator==(const FactorizationEvent&) const = default;
};

struct StepTelemetry {
  int t = 0;
  std::vector<GroupTelemetry> groups;
  std::optional<Cost> budget;  // fleet budget after planning; none in accbs mode
  bool improved = false;
  std::size_t group_count = 1;  // after this step's factorization
  std::size_t max_group_size = 0;
  double plan_ms = 0.0;
  std::vector<FactorizationEvent> factorizations;

  bool operator==(const StepTelemetry&) const = default;
};

struct StepResult {
  Movement movement;  // sorted by agent id
  StepTelemetry telemetry;
};

class Controller {
 public:
  Controller(const MapfInstance& instance, ControllerConfig config);

  // state: full-fleet positions x_t. For t > 0 the state must be the
  // previous movement's result.
  StepResult plan_step(const std::vector<VertexId>& state, int t);

  const std::vector<GroupState>& groups() const { return groups_; }
  std::optional<Cost> total_budget() const;
  Cost initial_budget() const { return initial_budget_; }
  const ControllerConfig& config() const { return config_; }

 private:
  struct GroupOutcome {
    std::vector<GroupState> groups;
    GroupTelemetry telemetry;
    std::vector<FactorizationEvent> events;
  };

  GroupOutcome plan_group(GroupState group, const std::vector<VertexId>& state, int t, double budget_ms) const;
  StepResult plan_step_accbs(const std::vector<VertexId>& state, int t) const;
  void check_invariants(const std::vector<VertexId>& state);

  const MapfInstance& instance_;
  ControllerConfig config_;
  std::unique_ptr<BackupController> backup_;
  std::vector<GroupState> groups_;
  Cost initial_budget_ = 0;
  bool started_ = false;
  std::vector<ReachableRegion> previous_regions_;
};

// Split a group along a partition; each part keeps its own certificate
// trajectories and their cost as its budget.
std::vector<GroupState> split_group(const GroupState& group, const GroupPartition& parts, const MapfInstance& instance,
                                    const std::vector<VertexId>& state);

}  // namespace daccbs
