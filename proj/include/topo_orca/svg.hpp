// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <vector>

#include "topo_orca/grid.hpp"
#include "topo_orca/topology.hpp"
#include "topo_orca/vec2.hpp"

namespace topo_orca {

/// Static scene for figure-style SVG output. Coordinates are world meters,
/// y-up (the writer flips the axis for screen display).
struct SvgScene {
  double world_w = 20.0;
  double world_h = 20.0;
  std::vector<RectObstacle> obstacles;
  const TopoGraph* graph = nullptr;           // nodes + skeleton edges
  std::vector<std::vector<Vec2>> trajectories;  // one trace per agent
  std::vector<Vec2> agents;                   // current positions
  double agent_radius = 0.3;
  std::vector<Vec2> plan;   // waypoint path, drawn in red
  std::vector<Vec2> goals;  // goal markers
};

void write_svg(const SvgScene& scene, std::ostream& out);

}  // namespace topo_orca
