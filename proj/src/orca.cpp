// SPDX-License-Identifier: Apache-2.0

#include "topo_orca/orca.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace topo_orca {

namespace {

constexpr double kEpsilon = 1e-10;

bool left_of(Vec2 a, Vec2 b, Vec2 c) { return det(b - a, c - a) >= 0.0; }

/// Clips the optimum to the feasible interval of constraint line `line_no`
/// inside the max_speed disc. Returns false when the interval is empty.
bool linear_program1(const std::vector<OrcaLine>& lines, std::size_t line_no,
                     double radius, Vec2 opt, bool direction_opt,
                     Vec2& result) {
  const double dot_product = dot(lines[line_no].point, lines[line_no].direction);
  const double discriminant = dot_product * dot_product + radius * radius -
                              norm_sq(lines[line_no].point);
  if (discriminant < 0.0) {
    // Max speed disc fully invalidates this line.
    return false;
  }

  const double sqrt_disc = std::sqrt(discriminant);
  double t_left = -dot_product - sqrt_disc;
  double t_right = -dot_product + sqrt_disc;

  for (std::size_t i = 0; i < line_no; ++i) {
    const double denominator =
        det(lines[line_no].direction, lines[i].direction);
    const double numerator =
        det(lines[i].direction, lines[line_no].point - lines[i].point);
    if (std::abs(denominator) <= kEpsilon) {
      // Parallel lines.
      if (numerator < 0.0) return false;
      continue;
    }
    const double t = numerator / denominator;
    if (denominator >= 0.0) {
      t_right = std::min(t_right, t);
    } else {
      t_left = std::max(t_left, t);
    }
    if (t_left > t_right) return false;
  }

  if (direction_opt) {
    if (dot(opt, lines[line_no].direction) > 0.0) {
      result = lines[line_no].point + t_right * lines[line_no].direction;
    } else {
      result = lines[line_no].point + t_left * lines[line_no].direction;
    }
  } else {
    const double t = dot(lines[line_no].direction, opt - lines[line_no].point);
    if (t < t_left) {
      result = lines[line_no].point + t_left * lines[line_no].direction;
    } else if (t > t_right) {
      result = lines[line_no].point + t_right * lines[line_no].direction;
    } else {
      result = lines[line_no].point + t * lines[line_no].direction;
    }
  }
  return true;
}

/// Nearest point to opt (or farthest along opt when direction_opt) in the
/// intersection of the half-planes and the disc. Returns lines.size() on
/// success, otherwise the index of the first infeasible line.
std::size_t linear_program2(const std::vector<OrcaLine>& lines, double radius,
                            Vec2 opt, bool direction_opt, Vec2& result) {
  if (direction_opt) {
    result = opt * radius;
  } else if (norm_sq(opt) > radius * radius) {
    result = normalized(opt) * radius;
  } else {
    result = opt;
  }

  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (det(lines[i].direction, lines[i].point - result) > 0.0) {
      const Vec2 temp = result;
      if (!linear_program1(lines, i, radius, opt, direction_opt, result)) {
        result = temp;
        return i;
      }
    }
  }
  return lines.size();
}

/// Second stage: minimizes the maximum violation of the agent lines while
/// keeping every obstacle line satisfied.
void linear_program3(const std::vector<OrcaLine>& lines,
                     std::size_t n_obstacle_lines, std::size_t begin_line,
                     double radius, Vec2& result) {
  double distance = 0.0;
  for (std::size_t i = begin_line; i < lines.size(); ++i) {
    if (det(lines[i].direction, lines[i].point - result) <= distance) continue;

    std::vector<OrcaLine> proj_lines(
        lines.begin(),
        lines.begin() + static_cast<std::ptrdiff_t>(n_obstacle_lines));
    for (std::size_t j = n_obstacle_lines; j < i; ++j) {
      OrcaLine line;
      const double determinant = det(lines[i].direction, lines[j].direction);
      if (std::abs(determinant) <= kEpsilon) {
        if (dot(lines[i].direction, lines[j].direction) > 0.0) continue;
        line.point = 0.5 * (lines[i].point + lines[j].point);
      } else {
        line.point =
            lines[i].point +
            (det(lines[j].direction, lines[i].point - lines[j].point) /
             determinant) *
                lines[i].direction;
      }
      line.direction = normalized(lines[j].direction - lines[i].direction);
      proj_lines.push_back(line);
    }

    const Vec2 temp = result;
    if (linear_program2(proj_lines, radius, perp_left(lines[i].direction),
                        true, result) < proj_lines.size()) {
      // Only reachable through accumulated rounding; keep the previous point.
      result = temp;
    }
    distance = det(lines[i].direction, lines[i].point - result);
  }
}

}  // namespace

std::vector<ObstacleVertex> build_obstacle_vertices(
    const std::vector<RectObstacle>& obstacles, double world_w,
    double world_h) {
  std::vector<ObstacleVertex> vertices;

  const auto add_polygon = [&](const std::vector<Vec2>& pts) {
    const int base = static_cast<int>(vertices.size());
    const int n = static_cast<int>(pts.size());
    for (int i = 0; i < n; ++i) {
      ObstacleVertex v;
      v.point = pts[i];
      v.next = base + (i + 1) % n;
      v.prev = base + (i + n - 1) % n;
      vertices.push_back(v);
    }
    for (int i = 0; i < n; ++i) {
      ObstacleVertex& v = vertices[base + i];
      v.direction = normalized(vertices[v.next].point - v.point);
      v.convex = left_of(vertices[v.prev].point, v.point,
                         vertices[v.next].point);
    }
  };

  // Interior obstacles wind counterclockwise.
  for (const RectObstacle& r : obstacles) {
    add_polygon({r.min_corner,
                 {r.max_corner.x, r.min_corner.y},
                 r.max_corner,
                 {r.min_corner.x, r.max_corner.y}});
  }
  // World boundary winds clockwise (free space inside the ring).
  add_polygon({{0.0, 0.0}, {0.0, world_h}, {world_w, world_h}, {world_w, 0.0}});
  return vertices;
}

std::vector<OrcaLine> agent_orca_lines(const Agent& agent,
                                       const std::vector<Agent>& all_agents,
                                       double dt) {
  struct Neighbor {
    double dist_sq;
    const Agent* other;
  };
  std::vector<Neighbor> neighbors;
  for (const Agent& other : all_agents) {
    if (other.id == agent.id) continue;
    const double d_sq = distance_sq(agent.position, other.position);
    if (d_sq < agent.neighbor_dist * agent.neighbor_dist) {
      neighbors.push_back({d_sq, &other});
    }
  }
  std::sort(neighbors.begin(), neighbors.end(),
            [](const Neighbor& a, const Neighbor& b) {
              if (a.dist_sq != b.dist_sq) return a.dist_sq < b.dist_sq;
              return a.other->id < b.other->id;
            });

  std::vector<OrcaLine> lines;
  lines.reserve(neighbors.size());
  const double inv_time_horizon = 1.0 / agent.time_horizon;

  for (const Neighbor& nb : neighbors) {
    const Agent& other = *nb.other;
    const Vec2 relative_position = other.position - agent.position;
    const Vec2 relative_velocity = agent.velocity - other.velocity;
    const double dist_sq = nb.dist_sq;
    const double combined_radius = agent.radius + other.radius;
    const double combined_radius_sq = combined_radius * combined_radius;

    OrcaLine line;
    Vec2 u;

    if (dist_sq > combined_radius_sq) {
      // Not in contact: constrain against the tau-truncated velocity
      // obstacle (disc-capped cone).
      const Vec2 w = relative_velocity - inv_time_horizon * relative_position;
      const double w_length_sq = norm_sq(w);
      const double dot_product = dot(w, relative_position);

      if (dot_product < 0.0 &&
          dot_product * dot_product > combined_radius_sq * w_length_sq) {
        // Project on the cut-off disc.
        const double w_length = std::sqrt(w_length_sq);
        const Vec2 unit_w = w / w_length;
        line.direction = {unit_w.y, -unit_w.x};
        u = (combined_radius * inv_time_horizon - w_length) * unit_w;
      } else {
        // Project on the nearer leg.
        const double leg = std::sqrt(dist_sq - combined_radius_sq);
        if (det(relative_position, w) > 0.0) {
          line.direction = Vec2{relative_position.x * leg -
                                    relative_position.y * combined_radius,
                                relative_position.x * combined_radius +
                                    relative_position.y * leg} /
                           dist_sq;
        } else {
          line.direction = -Vec2{relative_position.x * leg +
                                     relative_position.y * combined_radius,
                                 -relative_position.x * combined_radius +
                                     relative_position.y * leg} /
                           dist_sq;
        }
        u = dot(relative_velocity, line.direction) * line.direction -
            relative_velocity;
      }
    } else {
      // Already overlapping: require separation over the next timestep.
      const double inv_time_step = 1.0 / dt;
      const Vec2 w = relative_velocity - inv_time_step * relative_position;
      const double w_length = norm(w);
      const Vec2 unit_w = w_length > 0.0 ? w / w_length : Vec2{1.0, 0.0};
      line.direction = {unit_w.y, -unit_w.x};
      u = (combined_radius * inv_time_step - w_length) * unit_w;
    }

    // Each agent takes half the responsibility for avoidance.
    line.point = agent.velocity + 0.5 * u;
    lines.push_back(line);
  }
  return lines;
}

std::vector<OrcaLine> obstacle_orca_lines(
    const Agent& agent, const std::vector<ObstacleVertex>& vertices,
    double dt) {
  (void)dt;
  struct SegmentRef {
    double dist_sq;
    int index;
  };

  // Distance from the agent to each boundary segment [v, next(v)].
  std::vector<SegmentRef> in_range;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const Vec2 a = vertices[i].point;
    const Vec2 b = vertices[vertices[i].next].point;
    const Vec2 ab = b - a;
    const double r = dot(agent.position - a, ab) / norm_sq(ab);
    double d_sq;
    if (r < 0.0) {
      d_sq = distance_sq(agent.position, a);
    } else if (r > 1.0) {
      d_sq = distance_sq(agent.position, b);
    } else {
      d_sq = distance_sq(agent.position, a + r * ab);
    }
    if (d_sq < agent.neighbor_dist * agent.neighbor_dist) {
      in_range.push_back({d_sq, static_cast<int>(i)});
    }
  }
  std::sort(in_range.begin(), in_range.end(),
            [](const SegmentRef& a, const SegmentRef& b) {
              if (a.dist_sq != b.dist_sq) return a.dist_sq < b.dist_sq;
              return a.index < b.index;
            });

  std::vector<OrcaLine> lines;
  const double inv_time_horizon_obst = 1.0 / agent.time_horizon_obst;
  const double radius = agent.radius;
  const double radius_sq = radius * radius;

  for (const SegmentRef& ref : in_range) {
    const ObstacleVertex* obstacle1 = &vertices[ref.index];
    const ObstacleVertex* obstacle2 = &vertices[obstacle1->next];

    const Vec2 relative_position1 = obstacle1->point - agent.position;
    const Vec2 relative_position2 = obstacle2->point - agent.position;

    // Skip when an earlier line already covers this segment's VO.
    bool already_covered = false;
    for (const OrcaLine& line : lines) {
      if (det(inv_time_horizon_obst * relative_position1 - line.point,
              line.direction) -
                  inv_time_horizon_obst * radius >=
              -kEpsilon &&
          det(inv_time_horizon_obst * relative_position2 - line.point,
              line.direction) -
                  inv_time_horizon_obst * radius >=
              -kEpsilon) {
        already_covered = true;
        break;
      }
    }
    if (already_covered) continue;

    const double dist_sq1 = norm_sq(relative_position1);
    const double dist_sq2 = norm_sq(relative_position2);
    const Vec2 obstacle_vector = obstacle2->point - obstacle1->point;
    const double s =
        dot(-relative_position1, obstacle_vector) / norm_sq(obstacle_vector);
    const double dist_sq_line =
        norm_sq(-relative_position1 - s * obstacle_vector);

    OrcaLine line;

    if (s < 0.0 && dist_sq1 <= radius_sq) {
      // In contact with the left vertex.
      if (obstacle1->convex) {
        line.point = {0.0, 0.0};
        line.direction =
            normalized(Vec2{-relative_position1.y, relative_position1.x});
        lines.push_back(line);
      }
      continue;
    }
    if (s > 1.0 && dist_sq2 <= radius_sq) {
      // In contact with the right vertex; left to the neighboring segment
      // when it points outward.
      if (obstacle2->convex &&
          det(relative_position2, obstacle2->direction) >= 0.0) {
        line.point = {0.0, 0.0};
        line.direction =
            normalized(Vec2{-relative_position2.y, relative_position2.x});
        lines.push_back(line);
      }
      continue;
    }
    if (s >= 0.0 && s <= 1.0 && dist_sq_line <= radius_sq) {
      // In contact with the segment interior.
      line.point = {0.0, 0.0};
      line.direction = -obstacle1->direction;
      lines.push_back(line);
      continue;
    }

    // Not in contact: build the velocity obstacle legs.
    Vec2 left_leg_direction;
    Vec2 right_leg_direction;

    if (s < 0.0 && dist_sq_line <= radius_sq) {
      // Viewed obliquely, the left vertex alone defines the VO.
      if (!obstacle1->convex) continue;
      obstacle2 = obstacle1;
      const double leg1 = std::sqrt(dist_sq1 - radius_sq);
      left_leg_direction =
          Vec2{relative_position1.x * leg1 - relative_position1.y * radius,
               relative_position1.x * radius + relative_position1.y * leg1} /
          dist_sq1;
      right_leg_direction =
          Vec2{relative_position1.x * leg1 + relative_position1.y * radius,
               -relative_position1.x * radius + relative_position1.y * leg1} /
          dist_sq1;
    } else if (s > 1.0 && dist_sq_line <= radius_sq) {
      // The right vertex alone defines the VO.
      if (!obstacle2->convex) continue;
      obstacle1 = obstacle2;
      const double leg2 = std::sqrt(dist_sq2 - radius_sq);
      left_leg_direction =
          Vec2{relative_position2.x * leg2 - relative_position2.y * radius,
               relative_position2.x * radius + relative_position2.y * leg2} /
          dist_sq2;
      right_leg_direction =
          Vec2{relative_position2.x * leg2 + relative_position2.y * radius,
               -relative_position2.x * radius + relative_position2.y * leg2} /
          dist_sq2;
    } else {
      if (obstacle1->convex) {
        const double leg1 = std::sqrt(dist_sq1 - radius_sq);
        left_leg_direction =
            Vec2{relative_position1.x * leg1 - relative_position1.y * radius,
                 relative_position1.x * radius + relative_position1.y * leg1} /
            dist_sq1;
      } else {
        // Non-convex left vertex: the leg extends the cut-off line.
        left_leg_direction = -obstacle1->direction;
      }
      if (obstacle2->convex) {
        const double leg2 = std::sqrt(dist_sq2 - radius_sq);
        right_leg_direction =
            Vec2{relative_position2.x * leg2 + relative_position2.y * radius,
                 -relative_position2.x * radius + relative_position2.y * leg2} /
            dist_sq2;
      } else {
        right_leg_direction = obstacle1->direction;
      }
    }

    // A leg that points into the neighboring segment is replaced by that
    // segment's cut-off line and never generates a constraint itself.
    const ObstacleVertex* left_neighbor = &vertices[obstacle1->prev];
    bool left_leg_foreign = false;
    bool right_leg_foreign = false;
    if (obstacle1->convex &&
        det(left_leg_direction, -left_neighbor->direction) >= 0.0) {
      left_leg_direction = -left_neighbor->direction;
      left_leg_foreign = true;
    }
    if (obstacle2->convex &&
        det(right_leg_direction, obstacle2->direction) <= 0.0) {
      right_leg_direction = obstacle2->direction;
      right_leg_foreign = true;
    }

    const Vec2 left_cutoff =
        inv_time_horizon_obst * (obstacle1->point - agent.position);
    const Vec2 right_cutoff =
        inv_time_horizon_obst * (obstacle2->point - agent.position);
    const Vec2 cutoff_vector = right_cutoff - left_cutoff;

    // Project the current velocity on the velocity obstacle boundary.
    const double t =
        obstacle1 == obstacle2
            ? 0.5
            : dot(agent.velocity - left_cutoff, cutoff_vector) /
                  norm_sq(cutoff_vector);
    const double t_left =
        dot(agent.velocity - left_cutoff, left_leg_direction);
    const double t_right =
        dot(agent.velocity - right_cutoff, right_leg_direction);

    if ((t < 0.0 && t_left < 0.0) ||
        (obstacle1 == obstacle2 && t_left < 0.0 && t_right < 0.0)) {
      const Vec2 unit_w = normalized(agent.velocity - left_cutoff);
      line.direction = {unit_w.y, -unit_w.x};
      line.point = left_cutoff + radius * inv_time_horizon_obst * unit_w;
      lines.push_back(line);
      continue;
    }
    if (t > 1.0 && t_right < 0.0) {
      const Vec2 unit_w = normalized(agent.velocity - right_cutoff);
      line.direction = {unit_w.y, -unit_w.x};
      line.point = right_cutoff + radius * inv_time_horizon_obst * unit_w;
      lines.push_back(line);
      continue;
    }

    const double inf = std::numeric_limits<double>::infinity();
    const double dist_sq_cutoff =
        (t < 0.0 || t > 1.0 || obstacle1 == obstacle2)
            ? inf
            : norm_sq(agent.velocity - (left_cutoff + t * cutoff_vector));
    const double dist_sq_left =
        t_left < 0.0
            ? inf
            : norm_sq(agent.velocity -
                      (left_cutoff + t_left * left_leg_direction));
    const double dist_sq_right =
        t_right < 0.0
            ? inf
            : norm_sq(agent.velocity -
                      (right_cutoff + t_right * right_leg_direction));

    if (dist_sq_cutoff <= dist_sq_left && dist_sq_cutoff <= dist_sq_right) {
      line.direction = -obstacle1->direction;
      line.point = left_cutoff +
                   radius * inv_time_horizon_obst * perp_left(line.direction);
      lines.push_back(line);
      continue;
    }
    if (dist_sq_left <= dist_sq_right) {
      if (left_leg_foreign) continue;
      line.direction = left_leg_direction;
      line.point = left_cutoff +
                   radius * inv_time_horizon_obst * perp_left(line.direction);
      lines.push_back(line);
      continue;
    }
    if (right_leg_foreign) continue;
    line.direction = -right_leg_direction;
    line.point = right_cutoff +
                 radius * inv_time_horizon_obst * perp_left(line.direction);
    lines.push_back(line);
  }
  return lines;
}

Vec2 solve_velocity(const std::vector<OrcaLine>& lines,
                    std::size_t n_obstacle_lines, double max_speed, Vec2 pref,
                    bool* used_fallback) {
  Vec2 result;
  const std::size_t line_fail =
      linear_program2(lines, max_speed, pref, false, result);
  if (used_fallback != nullptr) *used_fallback = line_fail < lines.size();
  if (line_fail < lines.size()) {
    linear_program3(lines, n_obstacle_lines, line_fail, max_speed, result);
  }
  return result;
}

StepResult orca_step(std::vector<Agent>& agents,
                     const std::vector<ObstacleVertex>& obstacle_vertices,
                     double dt, double world_w, double world_h) {
  const std::vector<Agent> snapshot = agents;
  StepResult res;
  res.used_fallback.assign(agents.size(), 0);

  std::vector<Vec2> new_velocities(agents.size());
  for (std::size_t i = 0; i < snapshot.size(); ++i) {
    std::vector<OrcaLine> lines =
        obstacle_orca_lines(snapshot[i], obstacle_vertices, dt);
    const std::size_t n_obstacle_lines = lines.size();
    std::vector<OrcaLine> agent_lines =
        agent_orca_lines(snapshot[i], snapshot, dt);
    lines.insert(lines.end(), agent_lines.begin(), agent_lines.end());

    bool fallback = false;
    new_velocities[i] =
        solve_velocity(lines, n_obstacle_lines, snapshot[i].max_speed,
                       snapshot[i].pref_velocity, &fallback);
    res.used_fallback[i] = fallback ? 1 : 0;
  }

  for (std::size_t i = 0; i < agents.size(); ++i) {
    agents[i].velocity = new_velocities[i];
    agents[i].position = agents[i].position + agents[i].velocity * dt;
    agents[i].position.x = std::clamp(agents[i].position.x, 0.0, world_w);
    agents[i].position.y = std::clamp(agents[i].position.y, 0.0, world_h);
  }
  return res;
}

}  // namespace topo_orca
