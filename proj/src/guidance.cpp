// SPDX-License-Identifier: Apache-2.0

#include "topo_orca/guidance.hpp"

#include <algorithm>
#include <limits>
#include <queue>

namespace topo_orca {

std::optional<AugmentedGraph> augment(const TopoGraph& topo,
                                      const OccupancyGrid& mask, Vec2 s,
                                      Vec2 g) {
  if (mask.blocked_at(s) || mask.blocked_at(g)) return std::nullopt;

  AugmentedGraph ag;
  ag.base = &topo;
  ag.s = s;
  ag.g = g;
  for (const TopoNode& n : topo.nodes) {
    if (raycast_free(mask, s, n.pos)) {
      ag.s_edges.push_back({n.id, distance(s, n.pos)});
    }
    if (raycast_free(mask, g, n.pos)) {
      ag.g_edges.push_back({n.id, distance(g, n.pos)});
    }
  }
  if (raycast_free(mask, s, g)) ag.sg_edge = distance(s, g);
  return ag;
}

namespace {

/// Appends `poly` to `out` oriented to start where `out` currently ends,
/// skipping the duplicated joint vertex.
void append_polyline(std::vector<Vec2>& out, const std::vector<Vec2>& poly,
                     bool reversed) {
  if (poly.empty()) return;
  if (!reversed) {
    out.insert(out.end(), poly.begin() + 1, poly.end());
  } else {
    for (std::size_t i = poly.size() - 1; i-- > 0;) {
      out.push_back(poly[i]);
    }
  }
}

std::vector<Vec2> shortcut(const std::vector<Vec2>& raw,
                           const OccupancyGrid& mask) {
  std::vector<Vec2> out;
  if (raw.empty()) return out;
  out.push_back(raw.front());
  std::size_t i = 0;
  while (i + 1 < raw.size()) {
    std::size_t j = i + 1;
    for (std::size_t k = raw.size() - 1; k > i + 1; --k) {
      if (raycast_free(mask, raw[i], raw[k])) {
        j = k;
        break;
      }
    }
    out.push_back(raw[j]);
    i = j;
  }
  return out;
}

}  // namespace

std::optional<GraphPath> shortest_graph_path(const AugmentedGraph& ag) {
  const TopoGraph& topo = *ag.base;
  const int n = static_cast<int>(topo.nodes.size());
  const int s_id = n;
  const int g_id = n + 1;
  const int total = n + 2;

  // Adjacency: (to, weight, edge index) with edge index < 0 encoding
  // visibility edges (-1) so expansion knows which hops are straight lines.
  struct Arc {
    int to;
    double weight;
    int edge;
  };
  std::vector<std::vector<Arc>> adj(static_cast<std::size_t>(total));
  for (std::size_t e = 0; e < topo.edges.size(); ++e) {
    const TopoEdge& te = topo.edges[e];
    if (te.a == te.b) continue;  // self-loops never shorten a path
    adj[te.a].push_back({te.b, te.length, static_cast<int>(e)});
    adj[te.b].push_back({te.a, te.length, static_cast<int>(e)});
  }
  for (const auto& [node, len] : ag.s_edges) {
    adj[s_id].push_back({node, len, -1});
    adj[node].push_back({s_id, len, -1});
  }
  for (const auto& [node, len] : ag.g_edges) {
    adj[g_id].push_back({node, len, -1});
    adj[node].push_back({g_id, len, -1});
  }
  if (ag.sg_edge) {
    adj[s_id].push_back({g_id, *ag.sg_edge, -1});
    adj[g_id].push_back({s_id, *ag.sg_edge, -1});
  }

  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(static_cast<std::size_t>(total), inf);
  std::vector<int> pred_node(static_cast<std::size_t>(total), -1);
  std::vector<int> pred_edge(static_cast<std::size_t>(total), -2);

  using QItem = std::pair<double, int>;  // (distance, node); ties by node id
  std::priority_queue<QItem, std::vector<QItem>, std::greater<QItem>> queue;
  dist[s_id] = 0.0;
  queue.push({0.0, s_id});

  while (!queue.empty()) {
    const auto [d, u] = queue.top();
    queue.pop();
    if (d > dist[u]) continue;
    for (const Arc& arc : adj[u]) {
      const double nd = d + arc.weight;
      const bool better = nd < dist[arc.to];
      // Equal-cost tie: prefer the lexicographically smaller predecessor so
      // the chosen path is deterministic.
      const bool tie = nd == dist[arc.to] &&
                       (u < pred_node[arc.to] ||
                        (u == pred_node[arc.to] && arc.edge < pred_edge[arc.to]));
      if (better || tie) {
        dist[arc.to] = nd;
        pred_node[arc.to] = u;
        pred_edge[arc.to] = arc.edge;
        queue.push({nd, arc.to});
      }
    }
  }

  if (dist[g_id] == inf) return std::nullopt;

  GraphPath path;
  path.length = dist[g_id];
  for (int v = g_id; v != s_id; v = pred_node[v]) {
    path.nodes.push_back(v);
    path.edges.push_back(pred_edge[v]);
  }
  path.nodes.push_back(s_id);
  std::reverse(path.nodes.begin(), path.nodes.end());
  std::reverse(path.edges.begin(), path.edges.end());
  return path;
}

std::optional<WaypointPlan> shortest_path(const AugmentedGraph& ag,
                                          const OccupancyGrid& mask) {
  const TopoGraph& topo = *ag.base;
  const int n = static_cast<int>(topo.nodes.size());
  const int s_id = n;
  const int g_id = n + 1;

  if (distance_sq(ag.s, ag.g) == 0.0) {
    return WaypointPlan{{ag.s}, 0};
  }

  const auto path = shortest_graph_path(ag);
  if (!path) return std::nullopt;

  const auto node_pos = [&](int id) -> Vec2 {
    if (id == s_id) return ag.s;
    if (id == g_id) return ag.g;
    return topo.nodes[id].pos;
  };

  std::vector<Vec2> raw{ag.s};
  for (std::size_t hop = 0; hop + 1 < path->nodes.size(); ++hop) {
    const int from = path->nodes[hop];
    const int to = path->nodes[hop + 1];
    const int edge = path->edges[hop];
    if (edge < 0) {
      raw.push_back(node_pos(to));
    } else {
      const TopoEdge& te = topo.edges[edge];
      append_polyline(raw, te.polyline, /*reversed=*/from == te.b);
    }
  }

  WaypointPlan plan;
  plan.waypoints = shortcut(raw, mask);
  plan.current = 0;
  return plan;
}

Vec2 seek_velocity(Vec2 position, Vec2 target, double max_speed, double dt) {
  const Vec2 to_target = target - position;
  const double dist = norm(to_target);
  if (dist == 0.0) return {0.0, 0.0};
  const double speed = std::min(max_speed, dist / dt);
  return to_target * (speed / dist);
}

Vec2 follow(const Agent& agent, WaypointPlan& plan, double reach_radius,
            double dt) {
  if (plan.waypoints.empty()) return {0.0, 0.0};
  if (plan.current + 1 < plan.waypoints.size() &&
      distance(agent.position, plan.waypoints[plan.current]) < reach_radius) {
    ++plan.current;
  }
  return seek_velocity(agent.position, plan.waypoints[plan.current],
                       agent.max_speed, dt);
}

std::optional<WaypointPlan> plan_for(const Agent& agent, const TopoGraph& topo,
                                     const OccupancyGrid& mask) {
  const auto ag = augment(topo, mask, agent.position, agent.goal);
  if (!ag) return std::nullopt;
  return shortest_path(*ag, mask);
}

std::optional<Vec2> nearest_planning_anchor(const TopoGraph& topo,
                                            const OccupancyGrid& mask,
                                            Vec2 pos, int max_radius_cells) {
  const auto sees_node = [&](Vec2 p) {
    for (const TopoNode& n : topo.nodes) {
      if (raycast_free(mask, p, n.pos)) return true;
    }
    return false;
  };

  const int cx = mask.cell_x(pos.x);
  const int cy = mask.cell_y(pos.y);
  if (mask.free(cx, cy) && sees_node(pos)) return pos;

  struct Candidate {
    double dist_sq;
    std::size_t raster;
    Vec2 center;
  };
  std::vector<Candidate> candidates;
  for (int iy = std::max(0, cy - max_radius_cells);
       iy <= std::min(mask.height() - 1, cy + max_radius_cells); ++iy) {
    for (int ix = std::max(0, cx - max_radius_cells);
         ix <= std::min(mask.width() - 1, cx + max_radius_cells); ++ix) {
      if (!mask.free(ix, iy)) continue;
      const Vec2 c = mask.cell_center(ix, iy);
      candidates.push_back(
          {distance_sq(c, pos),
           static_cast<std::size_t>(iy) * mask.width() + ix, c});
    }
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const Candidate& a, const Candidate& b) {
              if (a.dist_sq != b.dist_sq) return a.dist_sq < b.dist_sq;
              return a.raster < b.raster;
            });
  for (const Candidate& c : candidates) {
    if (sees_node(c.center)) return c.center;
  }
  return std::nullopt;
}

}  // namespace topo_orca
