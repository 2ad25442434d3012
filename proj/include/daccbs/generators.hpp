/*
 * seeded random grid maps and instances
 */
#pragma once

#include <cstdint>
#include <optional>
#include <random>

#include "daccbs/instance.hpp"

namespace daccbs {

// Grid with each cell blocked independently with `blocked_ratio`, restricted
// to its largest 4-connected component (other passable cells are blocked).
Graph random_grid(int height, int width, double blocked_ratio, std::mt19937_64& rng);

Graph empty_grid(int height, int width);

// Distinct random starts and goals on one connected graph; nullopt if the
// graph has fewer than `agents` vertices.
std::optional<MapfInstance> random_instance(const Graph& graph, std::size_t agents, std::mt19937_64& rng);

// Draws instances until the reference backup solves one within `max_nodes`
// configurations; gives up after `attempts` draws.
std::optional<MapfInstance> random_solvable_instance(const Graph& graph, std::size_t agents, std::mt19937_64& rng,
                                                     std::size_t max_nodes = 100000, int attempts = 20);

}  // namespace daccbs
