/*
 * MAPF instance and MovingAI .map / .scen ingestion
 */
#pragma once

#include <istream>
#include <string>
#include <vector>

#include "daccbs/graph.hpp"

namespace daccbs {

// Immutable after construction; precomputes the to-goal field of every agent.
class MapfInstance {
 public:
  MapfInstance(Graph graph, std::vector<VertexId> starts, std::vector<VertexId> goals);

  const Graph& graph() const { return graph_; }
  std::size_t agent_count() const { return starts_.size(); }
  VertexId start(AgentId a) const { return starts_[a]; }
  VertexId goal(AgentId a) const { return goals_[a]; }
  const std::vector<VertexId>& starts() const { return starts_; }
  const std::vector<VertexId>& goals() const { return goals_; }
  const DistanceField& gamma(AgentId a) const { return gammas_[a]; }
  std::span<const DistanceField> gammas() const { return gammas_; }

  // sum of gamma over agents at the given full-fleet positions
  Cost gamma_sum(const std::vector<VertexId>& positions) const;

 private:
  Graph graph_;
  std::vector<VertexId> starts_;
  std::vector<VertexId> goals_;
  std::vector<DistanceField> gammas_;
};

Graph parse_map(std::istream& text);
Graph parse_map(const std::string& text);
Graph load_map(const std::string& path);

// first `count` rows of a MovingAI scenario; x/y columns are col/row
MapfInstance parse_scenario(std::istream& text, const Graph& graph, std::size_t count);
MapfInstance parse_scenario(const std::string& text, const Graph& graph, std::size_t count);
MapfInstance load_scenario(const std::string& path, const Graph& graph, std::size_t count);

}  // namespace daccbs
