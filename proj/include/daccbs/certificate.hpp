/*
 * Certificates: a conflict-free full plan from the current state to all goals
 * together with its cost (the budget). The budget only ever decreases: by the
 * off-goal count when the plan is advanced one executed step, and strictly
 * when a cheaper conflict-free candidate replaces it.
 */
#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "daccbs/backup.hpp"

namespace daccbs {

struct Certificate {
  JointTrajectory trajectories;  // padded, member order
  Cost budget = 0;

  std::vector<AgentId> agents() const;
};

struct Move {
  AgentId agent = kNoAgent;
  VertexId from = kNoVertex;
  VertexId to = kNoVertex;
  bool operator==(const Move&) const = default;
};
using Movement = std::vector<Move>;

// Def.-SOC cost of a goal-terminated joint trajectory
Cost certificate_cost(const JointTrajectory& joint, const MapfInstance& instance);

// Re-checks conflict-freedom, start/goal anchoring and the budget equality.
// `positions` is the full-fleet state. Throws DefectError on failure.
void validate_certificate(const Certificate& cert, const MapfInstance& instance,
                          const std::vector<VertexId>& positions);

Certificate init_certificate(const BackupController& backup, const MapfInstance& instance,
                             const std::vector<VertexId>& positions, const std::vector<AgentId>& group);

// Truncate by the executed first step. `executed` is the full-fleet state
// after the move; throws ContractViolation if it is not the plan's step 1.
Certificate advance(const Certificate& cert, const MapfInstance& instance, const std::vector<VertexId>& executed);

// Accepts iff the candidate is well-formed, conflict-free and strictly cheaper.
std::pair<Certificate, bool> try_improve(const Certificate& cert, JointTrajectory candidate,
                                         const MapfInstance& instance);

// prefix + backup tail from the prefix's terminal configuration; the junction
// configuration appears once. nullopt if the backup fails.
std::optional<JointTrajectory> build_candidate(const JointTrajectory& prefix, const BackupController& backup,
                                               const MapfInstance& instance);

Movement first_movement(const Certificate& cert);

}  // namespace daccbs
