// SPDX-License-Identifier: Apache-2.0

#include "topo_orca/svg.hpp"

#include <cstdio>
#include <ostream>

namespace topo_orca {

namespace {

std::string f3(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

void polyline(std::ostream& out, const std::vector<Vec2>& pts,
              const char* stroke, double width, const char* dash = nullptr) {
  if (pts.size() < 2) return;
  out << "  <polyline fill=\"none\" stroke=\"" << stroke
      << "\" stroke-width=\"" << f3(width) << "\"";
  if (dash != nullptr) out << " stroke-dasharray=\"" << dash << "\"";
  out << " points=\"";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    out << (i ? " " : "") << f3(pts[i].x) << "," << f3(pts[i].y);
  }
  out << "\"/>\n";
}

const char* kAgentColors[] = {"#2e7d32", "#1565c0", "#6a1b9a", "#ef6c00",
                              "#00838f", "#c62828", "#4e342e", "#37474f",
                              "#9e9d24", "#ad1457"};

}  // namespace

void write_svg(const SvgScene& scene, std::ostream& out) {
  const double margin = 0.5;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\""
      << f3(-margin) << " " << f3(-margin) << " "
      << f3(scene.world_w + 2 * margin) << " "
      << f3(scene.world_h + 2 * margin) << "\" width=\"800\" height=\"800\">\n";
  // Flip to y-up; all coordinates below are world meters.
  out << "<g transform=\"translate(0," << f3(scene.world_h)
      << ") scale(1,-1)\">\n";

  out << "  <rect x=\"0\" y=\"0\" width=\"" << f3(scene.world_w)
      << "\" height=\"" << f3(scene.world_h)
      << "\" fill=\"#fafafa\" stroke=\"#333333\" stroke-width=\"0.08\"/>\n";

  for (const RectObstacle& r : scene.obstacles) {
    out << "  <rect x=\"" << f3(r.min_corner.x) << "\" y=\""
        << f3(r.min_corner.y) << "\" width=\"" << f3(r.width())
        << "\" height=\"" << f3(r.height())
        << "\" fill=\"#9e9e9e\" stroke=\"#616161\" stroke-width=\"0.04\"/>\n";
  }

  if (scene.graph != nullptr) {
    for (const TopoEdge& e : scene.graph->edges) {
      polyline(out, e.polyline, "#64b5f6", 0.05);
    }
    for (const TopoNode& n : scene.graph->nodes) {
      out << "  <circle cx=\"" << f3(n.pos.x) << "\" cy=\"" << f3(n.pos.y)
          << "\" r=\"0.12\" fill=\"#0d47a1\"/>\n";
    }
  }

  for (std::size_t a = 0; a < scene.trajectories.size(); ++a) {
    polyline(out, scene.trajectories[a], kAgentColors[a % 10], 0.05);
  }

  polyline(out, scene.plan, "#e53935", 0.1);
  for (const Vec2& w : scene.plan) {
    out << "  <circle cx=\"" << f3(w.x) << "\" cy=\"" << f3(w.y)
        << "\" r=\"0.1\" fill=\"#e53935\"/>\n";
  }

  for (const Vec2& g : scene.goals) {
    out << "  <circle cx=\"" << f3(g.x) << "\" cy=\"" << f3(g.y)
        << "\" r=\"0.15\" fill=\"none\" stroke=\"#fb8c00\" "
           "stroke-width=\"0.08\"/>\n";
  }

  for (std::size_t a = 0; a < scene.agents.size(); ++a) {
    out << "  <circle cx=\"" << f3(scene.agents[a].x) << "\" cy=\""
        << f3(scene.agents[a].y) << "\" r=\"" << f3(scene.agent_radius)
        << "\" fill=\"" << kAgentColors[a % 10]
        << "\" fill-opacity=\"0.8\"/>\n";
  }

  out << "</g>\n</svg>\n";
}

}  // namespace topo_orca
