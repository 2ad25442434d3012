/*
 * Backup controllers: complete MAPF solvers that produce conflict-free
 * goal-reaching trajectory sets for an agent subset.
 *
 * The reference implementation ("lacam-ref") is a lazy configuration search:
 * depth-first over joint configurations, where each configuration lazily
 * enumerates constraints that fix successive agents' next vertices and asks a
 * priority-inheritance one-step generator (PIBT) for a successor consistent
 * with them. Revisited configurations are dropped.
 */
#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "daccbs/cbs.hpp"

namespace daccbs {

using Configuration = std::vector<VertexId>;

class BackupFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BackupController {
 public:
  virtual ~BackupController() = default;
  virtual std::string name() const = 0;
  virtual bool supports(const Graph& graph) const = 0;
  // Conflict-free trajectories (member order of `group`) from the group's
  // positions to its goals. Deterministic for identical inputs.
  virtual JointTrajectory rollout(const MapfInstance& instance, const AgentGroup& group) const = 0;

  // Rollout from the terminal configuration of a prefix.
  JointTrajectory rollout_suboptimal_tail(const MapfInstance& instance, const std::vector<AgentId>& agents,
                                          const Configuration& prefix_terminal) const
  {
    return rollout(instance, AgentGroup{agents, prefix_terminal});
  }
};

// "lacam-ref" or "cbs-full"; throws std::invalid_argument for anything else
std::unique_ptr<BackupController> make_backup(std::string_view name, std::uint64_t seed);

struct ForcedMove {
  std::size_t member = 0;
  VertexId to = kNoVertex;
};

// One PIBT step for the group's members. Higher priority plans first; ties go
// to the smaller agent id. Returns nullopt when no valid configuration honors
// the forced moves.
std::optional<Configuration> next_configuration(const MapfInstance& instance, const std::vector<AgentId>& agents,
                                                const Configuration& current, std::span<const double> priorities,
                                                std::span<const ForcedMove> forced, std::mt19937& rng);

class LacamBackup final : public BackupController {
 public:
  // max_nodes > 0 bounds the configurations generated; past it the rollout
  // fails with BackupFailure (used to screen random instances)
  explicit LacamBackup(std::uint64_t seed = 0, std::size_t max_nodes = 0) : seed_(seed), max_nodes_(max_nodes) {}
  std::string name() const override { return "lacam-ref"; }
  bool supports(const Graph& graph) const override { return graph.symmetric(); }
  JointTrajectory rollout(const MapfInstance& instance, const AgentGroup& group) const override;

 private:
  std::uint64_t seed_;
  std::size_t max_nodes_;
};

// Full-horizon CBS; falls back to lacam-ref past its expansion cap.
class CbsBackup final : public BackupController {
 public:
  explicit CbsBackup(std::uint64_t seed = 0, std::size_t max_expansions = 20000)
      : fallback_(seed), max_expansions_(max_expansions)
  {
  }
  std::string name() const override { return "cbs-full"; }
  bool supports(const Graph&) const override { return true; }
  JointTrajectory rollout(const MapfInstance& instance, const AgentGroup& group) const override;

 private:
  LacamBackup fallback_;
  std::size_t max_expansions_;
};

}  // namespace daccbs
