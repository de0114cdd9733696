// SPDX-License-Identifier: Apache-2.0

#include "topo_orca/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

namespace topo_orca {

namespace {

/// True when a disc agent of the configured radius can sit at p: the cell is
/// free and p keeps exact radius clearance from every obstacle and the walls.
bool position_free(const ScenarioConfig& cfg, const Scenario& scenario,
                   Vec2 p) {
  const double infl = cfg.inflation();
  if (p.x < infl || p.x > cfg.world_w - infl || p.y < infl ||
      p.y > cfg.world_h - infl) {
    return false;
  }
  if (scenario.grid.blocked_at(p)) return false;
  for (const RectObstacle& r : scenario.obstacles) {
    if (rect_distance(r, p) < infl) return false;
  }
  return true;
}

Vec2 sample_free(const ScenarioConfig& cfg, const Scenario& scenario,
                 Rng& rng) {
  for (int tries = 0; tries < 100000; ++tries) {
    const Vec2 p{rng.uniform(0.0, cfg.world_w), rng.uniform(0.0, cfg.world_h)};
    if (position_free(cfg, scenario, p)) return p;
  }
  throw ScenarioInfeasible("free-position sampling exhausted its budget");
}

}  // namespace

Scenario generate_scenario(const ScenarioConfig& cfg, std::uint64_t seed) {
  Rng rng(seed);
  const double infl = cfg.inflation();
  // Separations guarantee two things: every inflated obstacle blob is
  // disjoint from the others and from the boundary band (each obstacle
  // punches its own hole), and every corridor stays at least four cells wide
  // after inflation so waypoint visibility survives corridor bends.
  const double gap = 2.0 * infl + std::max(0.4, 4.0 * cfg.cell_size);
  const double wall_margin = gap;

  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<RectObstacle> obstacles;
    bool ok = true;
    for (int i = 0; i < cfg.n_obstacles && ok; ++i) {
      bool placed = false;
      for (int tries = 0; tries < 100 && !placed; ++tries) {
        const double w =
            rng.uniform(cfg.obstacle_min_size, cfg.obstacle_max_size);
        const double h =
            rng.uniform(cfg.obstacle_min_size, cfg.obstacle_max_size);
        const double lo_x = wall_margin;
        const double hi_x = cfg.world_w - wall_margin - w;
        const double lo_y = wall_margin;
        const double hi_y = cfg.world_h - wall_margin - h;
        if (hi_x <= lo_x || hi_y <= lo_y) continue;
        const double x = rng.uniform(lo_x, hi_x);
        const double y = rng.uniform(lo_y, hi_y);
        const RectObstacle r{{x, y}, {x + w, y + h}};
        placed = true;
        for (const RectObstacle& other : obstacles) {
          if (rect_gap(r, other) < gap) {
            placed = false;
            break;
          }
        }
        if (placed) obstacles.push_back(r);
      }
      ok = placed;
    }
    if (!ok) continue;

    OccupancyGrid grid =
        rasterize(cfg.world_w, cfg.world_h, cfg.cell_size, obstacles, infl);
    if (traversable_fraction(grid) < cfg.min_traversable) continue;

    const auto single_component = [](const OccupancyGrid& g) {
      int free_cells = 0;
      int sx = -1;
      int sy = -1;
      for (int iy = 0; iy < g.height(); ++iy) {
        for (int ix = 0; ix < g.width(); ++ix) {
          if (g.free(ix, iy)) {
            ++free_cells;
            if (sx < 0) {
              sx = ix;
              sy = iy;
            }
          }
        }
      }
      if (free_cells == 0) return false;
      std::vector<std::uint8_t> seen(
          static_cast<std::size_t>(g.width()) * g.height(), 0);
      std::vector<std::pair<int, int>> stack{{sx, sy}};
      seen[static_cast<std::size_t>(sy) * g.width() + sx] = 1;
      int reached = 0;
      while (!stack.empty()) {
        const auto [cx, cy] = stack.back();
        stack.pop_back();
        ++reached;
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            if (dx == 0 && dy == 0) continue;
            const int nx = cx + dx;
            const int ny = cy + dy;
            if (nx < 0 || nx >= g.width() || ny < 0 || ny >= g.height()) {
              continue;
            }
            const std::size_t ni =
                static_cast<std::size_t>(ny) * g.width() + nx;
            if (g.free(nx, ny) && !seen[ni]) {
              seen[ni] = 1;
              stack.push_back({nx, ny});
            }
          }
        }
      }
      return reached == free_cells;
    };

    // Free space must be a single 8-connected component, and stay one when
    // eroded by two extra cells: passages that admit the agent disc with no
    // slack defeat waypoint planning.
    if (!single_component(grid)) continue;
    if (!single_component(rasterize(cfg.world_w, cfg.world_h, cfg.cell_size,
                                    obstacles, infl + 2.0 * cfg.cell_size))) {
      continue;
    }

    // Junction-only graphs leave long node-free corridors; planning connects
    // start and goal to nodes, so split long edges to keep one in sight.
    const double node_spacing = 2.0;

    Scenario s;
    s.obstacles = std::move(obstacles);
    s.graph = subdivide_edges(prune_spurs(skeleton_to_graph(thin(grid), grid),
                                          cfg.prune_min_length()),
                              node_spacing);
    s.grid = std::move(grid);
    s.vertices = build_obstacle_vertices(s.obstacles, cfg.world_w, cfg.world_h);
    return s;
  }
  throw ScenarioInfeasible("scenario generation exhausted 1000 attempts");
}

Vec2 assign_goal(const ScenarioConfig& cfg, const Scenario& scenario,
                 Rng& rng, Vec2 agent_pos,
                 const std::vector<Vec2>& other_goals) {
  const double diag = std::hypot(cfg.world_w, cfg.world_h);
  const double min_dist = cfg.goal_min_dist_frac * diag;
  const double goal_sep = 2.0 * cfg.agent_radius;

  const auto acceptable = [&](Vec2 p, bool enforce_min_dist) {
    if (!position_free(cfg, scenario, p)) return false;
    for (const Vec2& gothers : other_goals) {
      if (distance(p, gothers) < goal_sep) return false;
    }
    return !enforce_min_dist || distance(p, agent_pos) >= min_dist;
  };

  for (int i = 0; i < 200; ++i) {
    const Vec2 p{rng.uniform(0.0, cfg.world_w), rng.uniform(0.0, cfg.world_h)};
    if (acceptable(p, true)) return p;
  }
  // Budget exhausted: relax the minimum-distance constraint and retry once.
  for (int i = 0; i < 200; ++i) {
    const Vec2 p{rng.uniform(0.0, cfg.world_w), rng.uniform(0.0, cfg.world_h)};
    if (acceptable(p, false)) return p;
  }
  throw ScenarioInfeasible("goal sampling exhausted its rejection budget");
}

namespace {

struct GoalState {
  Vec2 goal;
  WaypointPlan plan;  // topo policy only
};

GoalState next_goal(const ScenarioConfig& cfg, const Scenario& scenario,
                    Policy policy, Rng& goals_rng, const Agent& agent,
                    const std::vector<Vec2>& other_goals) {
  // The agent's center may legally sit inside the inflated margin or in a
  // concave notch of it (its disc clears the raw obstacle either way); plan
  // from the nearest free cell with a node in sight. The follower passes
  // through that point within one waypoint advance.
  const auto snapped = policy == Policy::plain_orca
                           ? std::optional<Vec2>(agent.position)
                           : nearest_planning_anchor(scenario.graph,
                                                     scenario.grid,
                                                     agent.position, 12);
  if (!snapped) {
    throw ScenarioInfeasible("agent position has no nearby planning anchor");
  }
  for (int tries = 0; tries < 50; ++tries) {
    GoalState gs;
    gs.goal = assign_goal(cfg, scenario, goals_rng, agent.position, other_goals);
    if (policy == Policy::plain_orca) return gs;
    Agent probe = agent;
    probe.position = *snapped;
    probe.goal = gs.goal;
    auto plan = plan_for(probe, scenario.graph, scenario.grid);
    if (plan) {
      gs.plan = std::move(*plan);
      return gs;
    }
    // NoPath: resample against the same budgeted stream.
  }
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "no reachable goal found after 50 resamples (agent at "
                "%.3f,%.3f; planning from %.3f,%.3f)",
                agent.position.x, agent.position.y, snapped->x, snapped->y);
  throw ScenarioInfeasible(buf);
}

}  // namespace

EpisodeLog run_episode(const ScenarioConfig& cfg, const Scenario& scenario,
                       Policy policy, int episode_index,
                       std::uint64_t starts_seed, std::uint64_t goals_seed) {
  EpisodeLog log;
  log.episode = episode_index;
  log.policy = policy;
  log.seed = cfg.rng_seed;
  log.world_w = cfg.world_w;
  log.world_h = cfg.world_h;
  log.cell_size = cfg.cell_size;
  log.inflation = cfg.inflation();
  log.n_agents = cfg.n_agents;
  log.agent_radius = cfg.agent_radius;
  log.max_speed = cfg.max_speed;
  log.neighbor_dist = cfg.neighbor_dist;
  log.time_horizon = cfg.time_horizon;
  log.time_horizon_obst = cfg.time_horizon_obst;
  log.reach_radius = cfg.reach_radius();
  log.theta = cfg.theta;
  log.frames = cfg.frames_per_episode;
  log.obstacles = scenario.obstacles;

  const double dt = 1.0;

  // Non-overlapping random free starts, identical for both policies of a
  // paired run because the stream seed and sampling logic are shared.
  Rng starts_rng(starts_seed);
  std::vector<Agent> agents;
  for (int a = 0; a < cfg.n_agents; ++a) {
    Vec2 pos;
    bool placed = false;
    for (int tries = 0; tries < 1000 && !placed; ++tries) {
      pos = sample_free(cfg, scenario, starts_rng);
      placed = true;
      for (const Agent& other : agents) {
        if (distance(pos, other.position) < 2.2 * cfg.agent_radius) {
          placed = false;
          break;
        }
      }
    }
    if (!placed) {
      throw ScenarioInfeasible("start placement exhausted its budget");
    }
    Agent agent;
    agent.id = a;
    agent.position = pos;
    agent.radius = cfg.agent_radius;
    agent.max_speed = cfg.max_speed;
    agent.neighbor_dist = cfg.neighbor_dist;
    agent.time_horizon = cfg.time_horizon;
    agent.time_horizon_obst = cfg.time_horizon_obst;
    agents.push_back(agent);
    log.starts.push_back(pos);
  }

  Rng goals_rng(goals_seed);
  std::vector<GoalState> goal_states(agents.size());
  std::vector<int> goal_ids(agents.size());
  std::vector<int> path_indices(agents.size(), 0);

  const auto current_goals = [&](int except_agent) {
    std::vector<Vec2> goals;
    for (std::size_t a = 0; a < goal_states.size(); ++a) {
      if (static_cast<int>(a) == except_agent) continue;
      goals.push_back(goal_states[a].goal);
    }
    return goals;
  };

  for (std::size_t a = 0; a < agents.size(); ++a) {
    std::vector<Vec2> others;
    for (std::size_t b = 0; b < a; ++b) others.push_back(goal_states[b].goal);
    goal_states[a] =
        next_goal(cfg, scenario, policy, goals_rng, agents[a], others);
    agents[a].goal = goal_states[a].goal;
    goal_ids[a] = static_cast<int>(log.goals.size());
    log.goals.push_back({goal_ids[a], static_cast<int>(a),
                         goal_states[a].goal, -1});
  }

  const double reach = cfg.reach_radius();
  log.records.reserve(static_cast<std::size_t>(cfg.frames_per_episode) *
                      cfg.n_agents);
  log.fallback.assign(static_cast<std::size_t>(cfg.frames_per_episode) *
                          cfg.n_agents,
                      0);

  for (int frame = 0; frame < cfg.frames_per_episode; ++frame) {
    // 1. Preferred velocities.
    for (std::size_t a = 0; a < agents.size(); ++a) {
      if (policy == Policy::plain_orca) {
        agents[a].pref_velocity =
            seek_velocity(agents[a].position, agents[a].goal, cfg.max_speed, dt);
      } else {
        agents[a].pref_velocity =
            follow(agents[a], goal_states[a].plan, reach, dt);
      }
    }

    // 2. Simultaneous ORCA step.
    const StepResult step =
        orca_step(agents, scenario.vertices, dt, cfg.world_w, cfg.world_h);
    for (std::size_t a = 0; a < agents.size(); ++a) {
      log.fallback[static_cast<std::size_t>(frame) * cfg.n_agents + a] =
          step.used_fallback[a];
    }

    // 3. Log the frame against the goal that was being pursued.
    for (std::size_t a = 0; a < agents.size(); ++a) {
      log.records.push_back({frame, static_cast<int>(a), agents[a].position,
                             agents[a].velocity, goal_ids[a],
                             path_indices[a]});
    }

    // 4. Goal-reach checks and reassignment.
    for (std::size_t a = 0; a < agents.size(); ++a) {
      if (distance(agents[a].position, agents[a].goal) >= reach) continue;
      log.events.push_back({static_cast<int>(a), frame, path_indices[a]});
      ++path_indices[a];
      goal_states[a] = next_goal(cfg, scenario, policy, goals_rng, agents[a],
                                 current_goals(static_cast<int>(a)));
      agents[a].goal = goal_states[a].goal;
      goal_ids[a] = static_cast<int>(log.goals.size());
      log.goals.push_back({goal_ids[a], static_cast<int>(a),
                           goal_states[a].goal, frame});
    }
  }
  return log;
}

BenchmarkResult run_benchmark(const ScenarioConfig& cfg,
                              PolicySelection selection) {
  struct EpisodeOutput {
    bool skipped = false;
    std::optional<EpisodeLog> orca;
    std::optional<EpisodeLog> topo;
  };
  std::vector<EpisodeOutput> outputs(static_cast<std::size_t>(cfg.n_episodes));

  const auto run_one = [&](int e) {
    EpisodeOutput out;
    const std::uint64_t scenario_seed =
        derive_seed(cfg.rng_seed, static_cast<std::uint64_t>(e),
                    RngStream::scenario);
    const std::uint64_t starts_seed = derive_seed(
        cfg.rng_seed, static_cast<std::uint64_t>(e), RngStream::starts);
    const std::uint64_t goals_seed = derive_seed(
        cfg.rng_seed, static_cast<std::uint64_t>(e), RngStream::goals);
    try {
      const Scenario scenario = generate_scenario(cfg, scenario_seed);
      if (selection != PolicySelection::topo_only) {
        out.orca = run_episode(cfg, scenario, Policy::plain_orca, e,
                               starts_seed, goals_seed);
      }
      if (selection != PolicySelection::orca_only) {
        out.topo = run_episode(cfg, scenario, Policy::topo_guided, e,
                               starts_seed, goals_seed);
      }
    } catch (const ScenarioInfeasible&) {
      out.skipped = true;
      out.orca.reset();
      out.topo.reset();
    }
    return out;
  };

  const int jobs = std::max(1, std::min(cfg.jobs, cfg.n_episodes));
  if (jobs == 1) {
    for (int e = 0; e < cfg.n_episodes; ++e) outputs[e] = run_one(e);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> workers;
    workers.reserve(static_cast<std::size_t>(jobs));
    for (int t = 0; t < jobs; ++t) {
      workers.emplace_back([&]() {
        for (;;) {
          const int e = next.fetch_add(1);
          if (e >= cfg.n_episodes) return;
          outputs[e] = run_one(e);
        }
      });
    }
    for (std::thread& w : workers) w.join();
  }

  BenchmarkResult result;
  for (int e = 0; e < cfg.n_episodes; ++e) {
    if (outputs[e].skipped) {
      result.skipped_episodes.push_back(e);
      continue;
    }
    if (outputs[e].orca) result.orca_logs.push_back(std::move(*outputs[e].orca));
    if (outputs[e].topo) result.topo_logs.push_back(std::move(*outputs[e].topo));
  }
  if (static_cast<double>(result.skipped_episodes.size()) >=
      0.01 * cfg.n_episodes) {
    throw ScenarioInfeasible(
        "1% or more of the episodes failed scenario generation");
  }
  return result;
}

double q6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return std::strtod(buf, nullptr);
}

namespace {

Vec2 q6v(Vec2 v) { return {q6(v.x), q6(v.y)}; }

}  // namespace

EpisodeLog quantized(const EpisodeLog& log) {
  EpisodeLog out = log;
  out.world_w = q6(log.world_w);
  out.world_h = q6(log.world_h);
  out.cell_size = q6(log.cell_size);
  out.inflation = q6(log.inflation);
  out.agent_radius = q6(log.agent_radius);
  out.max_speed = q6(log.max_speed);
  out.neighbor_dist = q6(log.neighbor_dist);
  out.time_horizon = q6(log.time_horizon);
  out.time_horizon_obst = q6(log.time_horizon_obst);
  out.reach_radius = q6(log.reach_radius);
  out.theta = q6(log.theta);
  for (RectObstacle& r : out.obstacles) {
    r.min_corner = q6v(r.min_corner);
    r.max_corner = q6v(r.max_corner);
  }
  for (Vec2& s : out.starts) s = q6v(s);
  for (GoalAssignment& g : out.goals) g.pos = q6v(g.pos);
  for (FrameRecord& r : out.records) {
    r.position = q6v(r.position);
    r.velocity = q6v(r.velocity);
  }
  return out;
}

void write_log(const EpisodeLog& log, std::ostream& out) {
  char buf[256];
  const auto f6 = [&buf](double v) {
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return std::string(buf);
  };

  out << "# topo-orca-log v1\n";
  out << "# episode " << log.episode << " policy " << policy_name(log.policy)
      << "\n";
  out << "# seed " << log.seed << "\n";
  out << "# world " << f6(log.world_w) << " " << f6(log.world_h) << " cell "
      << f6(log.cell_size) << " inflation " << f6(log.inflation) << "\n";
  out << "# agents " << log.n_agents << " radius " << f6(log.agent_radius)
      << " max_speed " << f6(log.max_speed) << " neighbor_dist "
      << f6(log.neighbor_dist) << " tau " << f6(log.time_horizon)
      << " tau_obst " << f6(log.time_horizon_obst) << " reach "
      << f6(log.reach_radius) << " theta " << f6(log.theta) << "\n";
  out << "# frames " << log.frames << "\n";
  for (const RectObstacle& r : log.obstacles) {
    out << "# obstacle " << f6(r.min_corner.x) << " " << f6(r.min_corner.y)
        << " " << f6(r.max_corner.x) << " " << f6(r.max_corner.y) << "\n";
  }
  for (std::size_t a = 0; a < log.starts.size(); ++a) {
    out << "# start " << a << " " << f6(log.starts[a].x) << " "
        << f6(log.starts[a].y) << "\n";
  }
  for (const GoalAssignment& g : log.goals) {
    if (g.frame < 0) {
      out << "# goal " << g.goal_id << " " << g.agent << " " << f6(g.pos.x)
          << " " << f6(g.pos.y) << "\n";
    }
  }

  std::size_t event_i = 0;
  std::size_t goal_i = 0;
  while (goal_i < log.goals.size() && log.goals[goal_i].frame < 0) ++goal_i;
  std::size_t rec_i = 0;
  for (int frame = 0; frame < log.frames; ++frame) {
    for (; rec_i < log.records.size() && log.records[rec_i].frame == frame;
         ++rec_i) {
      const FrameRecord& r = log.records[rec_i];
      out << log.episode << " " << r.frame << " " << r.agent << " "
          << f6(r.position.x) << " " << f6(r.position.y) << " "
          << f6(r.velocity.x) << " " << f6(r.velocity.y) << " " << r.goal_id
          << " " << r.path_index << "\n";
    }
    for (; event_i < log.events.size() && log.events[event_i].frame == frame;
         ++event_i) {
      const ReachEvent& e = log.events[event_i];
      out << "# reach " << e.agent << " " << e.frame << " " << e.path_index
          << "\n";
    }
    for (; goal_i < log.goals.size() && log.goals[goal_i].frame == frame;
         ++goal_i) {
      const GoalAssignment& g = log.goals[goal_i];
      out << "# goal " << g.goal_id << " " << g.agent << " " << f6(g.pos.x)
          << " " << f6(g.pos.y) << " " << g.frame << "\n";
    }
  }
}

EpisodeLog parse_log(std::istream& in, const std::string& origin) {
  EpisodeLog log;
  std::string line;
  int line_no = 0;
  const auto fail = [&](const std::string& what) {
    throw std::runtime_error(origin + ":" + std::to_string(line_no) + ": " +
                             what);
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream ss(line.substr(1));
      std::string tag;
      ss >> tag;
      if (tag == "episode") {
        std::string policy_word;
        std::string policy_val;
        ss >> log.episode >> policy_word >> policy_val;
        if (policy_val == "orca") {
          log.policy = Policy::plain_orca;
        } else if (policy_val == "topo") {
          log.policy = Policy::topo_guided;
        } else if (policy_word == "policy") {
          fail("unknown policy '" + policy_val + "'");
        }
      } else if (tag == "seed") {
        ss >> log.seed;
      } else if (tag == "world") {
        std::string w1, w2;
        ss >> log.world_w >> log.world_h >> w1 >> log.cell_size >> w2 >>
            log.inflation;
      } else if (tag == "agents") {
        std::string kw;
        ss >> log.n_agents >> kw >> log.agent_radius >> kw >> log.max_speed >>
            kw >> log.neighbor_dist >> kw >> log.time_horizon >> kw >>
            log.time_horizon_obst >> kw >> log.reach_radius >> kw >> log.theta;
      } else if (tag == "frames") {
        ss >> log.frames;
      } else if (tag == "obstacle") {
        RectObstacle r;
        ss >> r.min_corner.x >> r.min_corner.y >> r.max_corner.x >>
            r.max_corner.y;
        if (!ss) fail("malformed obstacle line");
        log.obstacles.push_back(r);
      } else if (tag == "start") {
        int agent = 0;
        Vec2 p;
        ss >> agent >> p.x >> p.y;
        if (!ss) fail("malformed start line");
        if (agent != static_cast<int>(log.starts.size())) {
          fail("start lines out of order");
        }
        log.starts.push_back(p);
      } else if (tag == "goal") {
        GoalAssignment g;
        ss >> g.goal_id >> g.agent >> g.pos.x >> g.pos.y;
        if (!ss) fail("malformed goal line");
        if (!(ss >> g.frame)) g.frame = -1;
        if (g.goal_id != static_cast<int>(log.goals.size())) {
          fail("goal ids out of order");
        }
        log.goals.push_back(g);
      } else if (tag == "reach") {
        ReachEvent e;
        ss >> e.agent >> e.frame >> e.path_index;
        if (!ss) fail("malformed reach line");
        log.events.push_back(e);
      }
      // Unknown '#' lines are comments.
      continue;
    }

    FrameRecord r;
    int episode = 0;
    std::istringstream ss(line);
    ss >> episode >> r.frame >> r.agent >> r.position.x >> r.position.y >>
        r.velocity.x >> r.velocity.y >> r.goal_id >> r.path_index;
    if (!ss) fail("malformed record line");
    log.records.push_back(r);
  }

  if (log.n_agents <= 0) {
    throw std::runtime_error(origin + ": missing '# agents' header");
  }
  if (log.records.size() !=
      static_cast<std::size_t>(log.frames) * log.n_agents) {
    throw std::runtime_error(origin + ": record count does not match frames x agents");
  }
  log.fallback.assign(log.records.size(), 0);
  return log;
}

}  // namespace topo_orca
