// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <vector>

#include "topo_orca/grid.hpp"
#include "topo_orca/orca.hpp"
#include "topo_orca/topology.hpp"
#include "topo_orca/vec2.hpp"

namespace topo_orca {

/// Per-agent extension of the topological graph: the agent's start and goal
/// plus straight-line visibility edges into the graph (and the direct (s,g)
/// edge when nothing occludes it). Visibility is tested on the inflated mask,
/// so every extra edge is collision-free for the disc agent.
struct AugmentedGraph {
  const TopoGraph* base = nullptr;
  Vec2 s;
  Vec2 g;
  std::vector<std::pair<int, double>> s_edges;  // (node id, length)
  std::vector<std::pair<int, double>> g_edges;
  std::optional<double> sg_edge;  // direct s-g distance when visible
};

/// Ordered waypoints from s to g; consecutive waypoints are mutually visible
/// on the mask. `current` is the index the follower is steering toward.
struct WaypointPlan {
  std::vector<Vec2> waypoints;
  std::size_t current = 0;
};

/// Builds the augmented graph. Returns std::nullopt when s or g sits in a
/// blocked cell (the caller must resample).
std::optional<AugmentedGraph> augment(const TopoGraph& topo,
                                      const OccupancyGrid& mask, Vec2 s,
                                      Vec2 g);

/// Minimum-length node sequence through the augmented graph. Node ids are
/// the topological ids; s and g appear as n and n+1 where n is the node
/// count. `edges` holds the traversed topological edge index per hop, -1 for
/// visibility edges.
struct GraphPath {
  std::vector<int> nodes;
  std::vector<int> edges;
  double length = 0.0;
};

std::optional<GraphPath> shortest_graph_path(const AugmentedGraph& ag);

/// Dijkstra over the augmented multigraph: topological edges weigh their
/// skeleton arc length, visibility edges their Euclidean length. Graph edges
/// on the winning path are expanded to their polylines, then the whole
/// sequence is simplified by greedy visibility shortcutting (jump to the
/// farthest visible vertex). Returns std::nullopt when g is unreachable.
std::optional<WaypointPlan> shortest_path(const AugmentedGraph& ag,
                                          const OccupancyGrid& mask);

/// Waypoint-following controller. Advances `plan.current` when the agent is
/// within reach_radius of the current waypoint (never past the last) and
/// returns the preferred velocity toward the current waypoint, magnitude
/// min(max_speed, distance/dt).
Vec2 follow(const Agent& agent, WaypointPlan& plan, double reach_radius,
            double dt);

/// augment + shortest_path for a fresh goal. std::nullopt when the goal is
/// unreachable (caller resamples).
std::optional<WaypointPlan> plan_for(const Agent& agent, const TopoGraph& topo,
                                     const OccupancyGrid& mask);

/// `pos` when its cell is free and at least one graph node is visible from
/// it; otherwise the nearest cell center satisfying both (ties by raster
/// order). Crowded agents can legally end up in concave notches of the
/// inflated margin where no node is in line of sight; planning starts from
/// the anchor instead, which the follower passes through on its way out.
std::optional<Vec2> nearest_planning_anchor(const TopoGraph& topo,
                                            const OccupancyGrid& mask,
                                            Vec2 pos, int max_radius_cells);

/// Straight-to-target preferred velocity, magnitude min(max_speed, dist/dt).
/// Shared by the plain-ORCA policy and the waypoint follower so that the two
/// policies coincide exactly when a plan degenerates to [s, g].
Vec2 seek_velocity(Vec2 position, Vec2 target, double max_speed, double dt);

}  // namespace topo_orca
