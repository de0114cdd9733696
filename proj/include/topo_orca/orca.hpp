// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <vector>

#include "topo_orca/grid.hpp"
#include "topo_orca/vec2.hpp"

namespace topo_orca {

/// Kinematic state and avoidance parameters of one disc agent. Velocities are
/// meters per frame; time horizons are frames (dt is 1 frame throughout).
struct Agent {
  int id = 0;
  Vec2 position;
  Vec2 velocity;
  double radius = 0.3;
  double max_speed = 0.2;
  Vec2 pref_velocity;
  double neighbor_dist = 3.0;
  double time_horizon = 10.0;       // tau for agent pairs
  double time_horizon_obst = 10.0;  // tau for static obstacles
  Vec2 goal;
};

/// Half-plane constraint in velocity space. The permitted side is to the
/// LEFT of `direction` through `point`: velocities v with
/// det(direction, v - point) >= 0. `direction` is unit length.
struct OrcaLine {
  Vec2 point;
  Vec2 direction;
};

/// Vertex of the static obstacle boundary, linked into closed polygons.
/// Interior rectangles wind counterclockwise and the world boundary winds
/// clockwise, so free space always lies on the non-penetrable side.
struct ObstacleVertex {
  Vec2 point;
  Vec2 direction;  // unit vector toward the next vertex
  bool convex = true;
  int next = 0;
  int prev = 0;
};

/// Builds the linked obstacle boundary for a set of rectangles plus the world
/// boundary ring of a world_w x world_h world.
std::vector<ObstacleVertex> build_obstacle_vertices(
    const std::vector<RectObstacle>& obstacles, double world_w,
    double world_h);

/// One half-plane per neighbor within neighbor_dist (self excluded),
/// ordered by (distance, id). Both agents of a pair take half the avoidance
/// responsibility. Pairs already in contact get a dt-horizon separation
/// constraint instead of the velocity-obstacle tangent.
std::vector<OrcaLine> agent_orca_lines(const Agent& agent,
                                       const std::vector<Agent>& all_agents,
                                       double dt);

/// Half-planes keeping the agent clear of obstacle segments within
/// time_horizon_obst. The agent takes full responsibility; obstacles never
/// move. Only segments within neighbor_dist contribute.
std::vector<OrcaLine> obstacle_orca_lines(
    const Agent& agent, const std::vector<ObstacleVertex>& vertices,
    double dt);

/// Velocity in the intersection of all half-planes and the max_speed disc
/// nearest to pref. The first n_obstacle_lines entries of `lines` must be the
/// obstacle constraints. When the agent-agent constraints are infeasible the
/// second-stage program minimizes the largest violation of the agent lines
/// while never violating obstacle lines; `used_fallback` reports this.
Vec2 solve_velocity(const std::vector<OrcaLine>& lines,
                    std::size_t n_obstacle_lines, double max_speed, Vec2 pref,
                    bool* used_fallback = nullptr);

struct StepResult {
  /// Agents whose velocity came from the second-stage (infeasible) program.
  std::vector<std::uint8_t> used_fallback;
};

/// Advances every agent one frame. All constraints are computed from the
/// pre-step snapshot and committed together, so results are independent of
/// agent order or any intra-step parallelism. Positions are clamped to
/// [0, world_w] x [0, world_h].
StepResult orca_step(std::vector<Agent>& agents,
                     const std::vector<ObstacleVertex>& obstacle_vertices,
                     double dt, double world_w, double world_h);

}  // namespace topo_orca
