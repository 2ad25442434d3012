// Brute-force reference for desk-scale instances (<= 3 agents, <= 16 vertices).
// Deliberately shares nothing with the engine beyond the instance container:
// own BFS, own collision rules, own search.
#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "daccbs/instance.hpp"

namespace oracle {

using daccbs::AgentId;
using daccbs::Cost;
using daccbs::MapfInstance;
using daccbs::VertexId;

class Refusal : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kMaxAgents = 3;
inline constexpr std::size_t kMaxVertices = 16;

struct Optimum {
  Cost soc = 0;  // kInfinity when nothing fits under the cap
  int makespan = 0;
};

// cap defaults to sum of start distances + |V|
int default_cap(const MapfInstance& instance);

Optimum optimal_soc(const MapfInstance& instance, std::optional<int> makespan_cap = std::nullopt);

// cheapest goal-reaching joint plan in which `agent` stands on `vertex` at
// some timestep
Cost min_cost_visiting(const MapfInstance& instance, AgentId agent, VertexId vertex,
                       std::optional<int> makespan_cap = std::nullopt);

bool exhaustive_exclusion_check(const MapfInstance& instance, Cost budget, AgentId agent, VertexId vertex,
                                std::optional<int> makespan_cap = std::nullopt);

// one synchronous step from a to b: every move along an edge (or a wait), no
// shared vertex, no swap
bool legal_step(const MapfInstance& instance, const std::vector<VertexId>& a, const std::vector<VertexId>& b);

}  // namespace oracle
