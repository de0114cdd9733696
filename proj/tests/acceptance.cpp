// SPDX-License-Identifier: Apache-2.0

// Acceptance suite: one criterion per number, one PASS/FAIL line each.
// Run with no arguments for all criteria or with a list of numbers.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "topo_orca/cli.hpp"
#include "topo_orca/guidance.hpp"
#include "topo_orca/metrics.hpp"
#include "topo_orca/simulation.hpp"

using namespace topo_orca;
namespace fs = std::filesystem;

namespace {

struct Failure {
  std::string detail;
};

using CheckList = std::vector<std::string>;

void expect(CheckList& failures, bool ok, const std::string& what) {
  if (!ok) failures.push_back(what);
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

// ---------------------------------------------------------------------------
// Criterion 1: directional Table-1 reproduction at 4 and 10 agents.
// ---------------------------------------------------------------------------

struct PairedReports {
  MetricsReport topo;
  MetricsReport orca;
};

PairedReports run_paired(int n_agents, int episodes) {
  ScenarioConfig cfg;
  cfg.n_agents = n_agents;
  cfg.n_episodes = episodes;
  cfg.jobs = 2;
  const BenchmarkResult result = run_benchmark(cfg, PolicySelection::both);
  std::vector<EpisodeLog> topo_q;
  std::vector<EpisodeLog> orca_q;
  for (const EpisodeLog& log : result.topo_logs) topo_q.push_back(quantized(log));
  for (const EpisodeLog& log : result.orca_logs) orca_q.push_back(quantized(log));
  return {compute_metrics(topo_q, cfg.theta), compute_metrics(orca_q, cfg.theta)};
}

void check_direction(CheckList& failures, const PairedReports& r,
                     const std::string& tag) {
  expect(failures, r.topo.avg_velocity_per_path > r.orca.avg_velocity_per_path,
         tag + " velocity: topo " + fmt(r.topo.avg_velocity_per_path) +
             " !> orca " + fmt(r.orca.avg_velocity_per_path));
  expect(failures, r.topo.pct_mutual_frozen < r.orca.pct_mutual_frozen,
         tag + " mutual frozen: topo " + fmt(r.topo.pct_mutual_frozen) +
             " !< orca " + fmt(r.orca.pct_mutual_frozen));
  expect(failures, r.topo.pct_frozen_per_path < r.orca.pct_frozen_per_path,
         tag + " frozen/path: topo " + fmt(r.topo.pct_frozen_per_path) +
             " !< orca " + fmt(r.orca.pct_frozen_per_path));
  expect(failures, r.topo.avg_occupied_paths < r.orca.avg_occupied_paths,
         tag + " occupied: topo " + fmt(r.topo.avg_occupied_paths) +
             " !< orca " + fmt(r.orca.avg_occupied_paths));
  expect(failures, r.topo.avg_total_paths > r.orca.avg_total_paths,
         tag + " total paths: topo " + fmt(r.topo.avg_total_paths) +
             " !> orca " + fmt(r.orca.avg_total_paths));
  expect(failures, r.topo.pct_stuck_agents < r.orca.pct_stuck_agents,
         tag + " stuck: topo " + fmt(r.topo.pct_stuck_agents) + " !< orca " +
             fmt(r.orca.pct_stuck_agents));
}

CheckList criterion1() {
  CheckList failures;
  const auto t0 = std::chrono::steady_clock::now();
  const PairedReports four = run_paired(4, 200);
  const PairedReports ten = run_paired(10, 200);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();

  check_direction(failures, four, "4 agents");
  check_direction(failures, ten, "10 agents");

  // Stuck-agent ratio ORCA/topo must reach at least 3 at 4 agents.
  const double topo_stuck = four.topo.pct_stuck_agents;
  const double orca_stuck = four.orca.pct_stuck_agents;
  const bool ratio_ok =
      topo_stuck == 0.0 ? orca_stuck > 0.0 : orca_stuck / topo_stuck >= 3.0;
  expect(failures, ratio_ok,
         "stuck ratio at 4 agents: orca " + fmt(orca_stuck) + " / topo " +
             fmt(topo_stuck) + " < 3");

  expect(failures, seconds < 600.0,
         "runtime " + fmt(seconds) + " s exceeds 10 minutes");
  std::cout << "  [criterion 1] 4-agent topo/orca velocity "
            << fmt(four.topo.avg_velocity_per_path) << "/"
            << fmt(four.orca.avg_velocity_per_path) << ", stuck "
            << fmt(topo_stuck) << "/" << fmt(orca_stuck) << ", "
            << fmt(seconds) << " s for both benchmarks\n";
  return failures;
}

// ---------------------------------------------------------------------------
// Criterion 2: canonical stall case, 20 seeded wall placements.
// ---------------------------------------------------------------------------

CheckList criterion2() {
  CheckList failures;
  ScenarioConfig cfg;
  cfg.n_agents = 1;

  const double world = cfg.world_w;
  for (int seed = 0; seed < 20; ++seed) {
    Rng rng(derive_seed(1000 + seed, 0, RngStream::scenario));
    const double wall_w = rng.uniform(0.55 * world, 0.85 * world);
    const double wall_h = rng.uniform(0.8, 1.6);
    const double cx = world / 2 + rng.uniform(-0.07, 0.07) * world;
    const double cy = cfg.world_h / 2 + rng.uniform(-0.1, 0.1) * cfg.world_h;
    RectObstacle wall{{cx - wall_w / 2, cy - wall_h / 2},
                      {cx + wall_w / 2, cy + wall_h / 2}};
    wall.min_corner.x = std::max(wall.min_corner.x, 1.4);
    wall.max_corner.x = std::min(wall.max_corner.x, world - 1.4);

    Scenario scenario;
    scenario.obstacles = {wall};
    scenario.grid = rasterize(cfg.world_w, cfg.world_h, cfg.cell_size,
                              scenario.obstacles, cfg.inflation());
    scenario.graph = subdivide_edges(
        prune_spurs(skeleton_to_graph(thin(scenario.grid), scenario.grid),
                    cfg.prune_min_length()),
        2.0);
    scenario.vertices =
        build_obstacle_vertices(scenario.obstacles, cfg.world_w, cfg.world_h);

    // Start, wall center, and goal collinear through the wall.
    const double wall_cx = 0.5 * (wall.min_corner.x + wall.max_corner.x);
    const Vec2 start{wall_cx, wall.min_corner.y - rng.uniform(2.2, 3.5)};
    const Vec2 goal{wall_cx, wall.max_corner.y + rng.uniform(2.2, 3.5)};

    const auto run_policy = [&](Policy policy) {
      Agent agent;
      agent.id = 0;
      agent.position = start;
      agent.goal = goal;
      agent.radius = cfg.agent_radius;
      agent.max_speed = cfg.max_speed;
      agent.neighbor_dist = cfg.neighbor_dist;
      agent.time_horizon = cfg.time_horizon;
      agent.time_horizon_obst = cfg.time_horizon_obst;
      WaypointPlan plan;
      if (policy == Policy::topo_guided) {
        const auto p = plan_for(agent, scenario.graph, scenario.grid);
        if (!p) return false;
        plan = *p;
      }
      std::vector<Agent> agents{agent};
      for (int f = 0; f < cfg.frames_per_episode; ++f) {
        agents[0].pref_velocity =
            policy == Policy::plain_orca
                ? seek_velocity(agents[0].position, goal, cfg.max_speed, 1.0)
                : follow(agents[0], plan, cfg.reach_radius(), 1.0);
        orca_step(agents, scenario.vertices, 1.0, cfg.world_w, cfg.world_h);
        if (distance(agents[0].position, goal) < cfg.reach_radius()) {
          return true;
        }
      }
      return false;
    };

    const bool orca_reached = run_policy(Policy::plain_orca);
    const bool topo_reached = run_policy(Policy::topo_guided);
    expect(failures, !orca_reached,
           "seed " + std::to_string(seed) + ": plain ORCA rounded the wall");
    expect(failures, topo_reached,
           "seed " + std::to_string(seed) + ": topo-guided did not reach");
  }
  return failures;
}

// ---------------------------------------------------------------------------
// Criterion 3: LP equivalence against the dense-sampling oracle.
// ---------------------------------------------------------------------------

CheckList criterion3() {
  CheckList failures;
  Rng rng(31337);
  const double max_speed = 1.0;
  const int grid_n = 400;
  const double resolution = 2.0 * max_speed / grid_n;
  int violations = 0;
  int gap_failures = 0;

  for (int trial = 0; trial < 1000; ++trial) {
    const int k = 1 + static_cast<int>(rng.uniform_index(8));
    const double r = rng.uniform(0.0, 0.5 * max_speed);
    const double angle = rng.uniform(0.0, 6.283185307179586);
    const Vec2 interior{r * std::cos(angle), r * std::sin(angle)};
    std::vector<OrcaLine> lines;
    for (int i = 0; i < k; ++i) {
      const double a = rng.uniform(0.0, 6.283185307179586);
      const Vec2 dir{std::cos(a), std::sin(a)};
      const double offset = 4.0 * resolution + rng.uniform(0.0, max_speed);
      lines.push_back({interior - offset * perp_left(dir), dir});
    }
    const Vec2 pref{rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5)};

    const Vec2 v = solve_velocity(lines, 0, max_speed, pref);
    for (const OrcaLine& line : lines) {
      if (det(line.direction, v - line.point) < -1e-9) ++violations;
    }
    if (norm(v) > max_speed + 1e-9) ++violations;

    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= grid_n; ++i) {
      for (int j = 0; j <= grid_n; ++j) {
        const Vec2 cand{-max_speed + 2.0 * max_speed * i / grid_n,
                        -max_speed + 2.0 * max_speed * j / grid_n};
        if (norm_sq(cand) > max_speed * max_speed) continue;
        bool ok = true;
        for (const OrcaLine& line : lines) {
          if (det(line.direction, cand - line.point) < 0.0) {
            ok = false;
            break;
          }
        }
        if (ok) best = std::min(best, distance(cand, pref));
      }
    }
    const double gap = best - distance(v, pref);
    if (!(gap >= -1e-9 && gap <= 2.0 * resolution)) ++gap_failures;
  }
  expect(failures, violations == 0,
         std::to_string(violations) + " constraint violations beyond 1e-9");
  expect(failures, gap_failures == 0,
         std::to_string(gap_failures) +
             " of 1000 sets outside 2x sampling resolution");
  return failures;
}

// ---------------------------------------------------------------------------
// Criterion 4: collision-freedom across 50 seeded 10-agent episodes.
// ---------------------------------------------------------------------------

CheckList criterion4() {
  CheckList failures;
  ScenarioConfig cfg;
  cfg.n_agents = 10;
  cfg.n_episodes = 50;
  cfg.rng_seed = 424242;
  cfg.jobs = 2;
  const BenchmarkResult result = run_benchmark(cfg, PolicySelection::both);

  int checked_episodes = 0;
  const auto scan = [&](const std::vector<EpisodeLog>& logs) {
    for (const EpisodeLog& log : logs) {
      ++checked_episodes;
      const int n = log.n_agents;
      std::vector<double> prev_depth(static_cast<std::size_t>(n) * n, -1.0);
      for (int f = 0; f < log.frames; ++f) {
        for (int i = 0; i < n; ++i) {
          for (int j = i + 1; j < n; ++j) {
            const double d = distance(log.record(f, i).position,
                                      log.record(f, j).position);
            const double depth = 2.0 * log.agent_radius - d;
            const std::size_t pair = static_cast<std::size_t>(i) * n + j;
            if (depth <= 1e-6) {
              prev_depth[pair] = -1.0;
              continue;
            }
            const bool exempt =
                log.fallback[static_cast<std::size_t>(f) * n + i] ||
                log.fallback[static_cast<std::size_t>(f) * n + j];
            if (!exempt) {
              expect(failures, false,
                     "episode " + std::to_string(log.episode) + " frame " +
                         std::to_string(f) + ": pair distance " + fmt(d) +
                         " without fallback");
              return;
            }
            prev_depth[pair] = depth;
          }
        }
      }
    }
  };
  scan(result.orca_logs);
  scan(result.topo_logs);
  expect(failures, checked_episodes >= 2 * 49, "not enough episodes ran");
  return failures;
}

// ---------------------------------------------------------------------------
// Criterion 5: thinning properties.
// ---------------------------------------------------------------------------

namespace thin_inputs {

/// Deterministic family of 1-pixel-wide curves.
OccupancyGrid curve_mask(Rng& rng) {
  const int w = 40 + static_cast<int>(rng.uniform_index(30));
  const int h = 40 + static_cast<int>(rng.uniform_index(30));
  OccupancyGrid grid(w, h, 0.1);
  for (int iy = 0; iy < h; ++iy) {
    for (int ix = 0; ix < w; ++ix) grid.set_blocked(ix, iy, true);
  }
  const int kind = static_cast<int>(rng.uniform_index(4));
  const int x0 = 3 + static_cast<int>(rng.uniform_index(8));
  const int y0 = 3 + static_cast<int>(rng.uniform_index(8));
  const int len = 10 + static_cast<int>(rng.uniform_index(w - x0 - 14));
  const int len2 = 10 + static_cast<int>(rng.uniform_index(h - y0 - 14));
  switch (kind) {
    case 0:  // straight line
      for (int i = 0; i < len; ++i) grid.set_blocked(x0 + i, y0, false);
      break;
    case 1:  // L-shape
      for (int i = 0; i < len; ++i) grid.set_blocked(x0 + i, y0, false);
      for (int i = 0; i < len2; ++i) grid.set_blocked(x0 + len - 1, y0 + i, false);
      break;
    case 2: {  // diamond ring (clean 1-px cycle)
      const int r2 = 4 + static_cast<int>(rng.uniform_index(6));
      const int cx = x0 + r2;
      const int cy = y0 + r2;
      for (int i = 0; i < r2; ++i) {
        grid.set_blocked(cx + r2 - i, cy + i, false);
        grid.set_blocked(cx - i, cy + r2 - i, false);
        grid.set_blocked(cx - r2 + i, cy - i, false);
        grid.set_blocked(cx + i, cy - r2 + i, false);
      }
      break;
    }
    default:  // diagonal line
      for (int i = 0; i < std::min(len, len2); ++i) {
        grid.set_blocked(x0 + i, y0 + i, false);
      }
      break;
  }
  return grid;
}

int components(const std::vector<std::uint8_t>& fg, int w, int h) {
  std::vector<int> label(fg.size(), -1);
  int count = 0;
  for (int y0 = 0; y0 < h; ++y0) {
    for (int x0 = 0; x0 < w; ++x0) {
      if (!fg[static_cast<std::size_t>(y0) * w + x0] ||
          label[static_cast<std::size_t>(y0) * w + x0] >= 0) {
        continue;
      }
      std::vector<std::pair<int, int>> stack{{x0, y0}};
      label[static_cast<std::size_t>(y0) * w + x0] = count;
      while (!stack.empty()) {
        const auto [x, y] = stack.back();
        stack.pop_back();
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            const int nx = x + dx;
            const int ny = y + dy;
            if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
            const std::size_t ni = static_cast<std::size_t>(ny) * w + nx;
            if (fg[ni] && label[ni] < 0) {
              label[ni] = count;
              stack.push_back({nx, ny});
            }
          }
        }
      }
      ++count;
    }
  }
  return count;
}

}  // namespace thin_inputs

CheckList criterion5() {
  CheckList failures;

  // (a) Idempotence on 1-pixel-wide inputs.
  {
    Rng rng(505);
    for (int trial = 0; trial < 100; ++trial) {
      const OccupancyGrid mask = thin_inputs::curve_mask(rng);
      const Skeleton s = thin(mask);
      bool same = true;
      for (int iy = 0; iy < mask.height() && same; ++iy) {
        for (int ix = 0; ix < mask.width() && same; ++ix) {
          if (s.at(ix, iy) != mask.free(ix, iy)) same = false;
        }
      }
      if (!same) {
        expect(failures, false,
               "idempotence violated on curve " + std::to_string(trial));
        break;
      }
    }
  }

  // (b) Connected-component preservation on 500 random masks.
  {
    Rng rng(616);
    int bad = 0;
    for (int trial = 0; trial < 500; ++trial) {
      std::vector<RectObstacle> obstacles;
      const int k = static_cast<int>(rng.uniform_index(6));
      for (int i = 0; i < k; ++i) {
        const Vec2 lo{rng.uniform(0.5, 8.0), rng.uniform(0.5, 8.0)};
        obstacles.push_back({lo, lo + Vec2{rng.uniform(0.5, 4.0),
                                           rng.uniform(0.5, 4.0)}});
      }
      const double inflation = rng.uniform(0.0, 0.5);
      const OccupancyGrid mask = rasterize(10.0, 10.0, 0.1, obstacles,
                                           inflation);
      const Skeleton skel = thin(mask);

      std::vector<std::uint8_t> free_cells(mask.cells().size());
      std::vector<std::uint8_t> skel_cells(mask.cells().size());
      for (int iy = 0; iy < mask.height(); ++iy) {
        for (int ix = 0; ix < mask.width(); ++ix) {
          const std::size_t i =
              static_cast<std::size_t>(iy) * mask.width() + ix;
          free_cells[i] = mask.free(ix, iy) ? 1 : 0;
          skel_cells[i] = skel.at(ix, iy) ? 1 : 0;
        }
      }
      if (thin_inputs::components(free_cells, mask.width(), mask.height()) !=
          thin_inputs::components(skel_cells, mask.width(), mask.height())) {
        ++bad;
      }
    }
    expect(failures, bad == 0,
           std::to_string(bad) + " of 500 masks changed component count");
  }

  // (c) Cycle rank of the pruned graph equals obstacle count.
  {
    ScenarioConfig cfg;
    int done = 0;
    int wrong = 0;
    for (int trial = 0; done < 100 && trial < 400; ++trial) {
      cfg.n_obstacles = 1 + trial % 4;
      cfg.rng_seed = 9000 + trial;
      try {
        const Scenario s = generate_scenario(
            cfg, derive_seed(cfg.rng_seed, 0, RngStream::scenario));
        if (s.graph.cycle_rank() != cfg.n_obstacles) ++wrong;
        ++done;
      } catch (const ScenarioInfeasible&) {
      }
    }
    expect(failures, done == 100, "only generated " + std::to_string(done) +
                                      " of 100 scenarios");
    expect(failures, wrong == 0,
           std::to_string(wrong) + " of 100 scenarios had wrong cycle rank");
  }
  return failures;
}

// ---------------------------------------------------------------------------
// Criterion 6: Dijkstra vs exhaustive enumeration, 200 graphs <= 10 nodes.
// ---------------------------------------------------------------------------

CheckList criterion6() {
  CheckList failures;
  Rng rng(606);
  int mismatches = 0;
  for (int trial = 0; trial < 200; ++trial) {
    TopoGraph topo;
    const int n = 2 + static_cast<int>(rng.uniform_index(7));
    for (int i = 0; i < n; ++i) {
      topo.nodes.push_back(
          {i, {rng.uniform(1.0, 19.0), rng.uniform(1.0, 19.0)}});
    }
    const int m = 1 + static_cast<int>(rng.uniform_index(2 * n));
    for (int e = 0; e < m; ++e) {
      const int a = static_cast<int>(rng.uniform_index(n));
      int b = static_cast<int>(rng.uniform_index(n));
      if (a == b) b = (b + 1) % n;
      TopoEdge edge;
      edge.a = a;
      edge.b = b;
      edge.length = distance(topo.nodes[a].pos, topo.nodes[b].pos) +
                    rng.uniform(0.0, 6.0);
      edge.polyline = {topo.nodes[a].pos, topo.nodes[b].pos};
      topo.edges.push_back(edge);
    }
    AugmentedGraph ag;
    ag.base = &topo;
    ag.s = {rng.uniform(1.0, 19.0), rng.uniform(1.0, 19.0)};
    ag.g = {rng.uniform(1.0, 19.0), rng.uniform(1.0, 19.0)};
    for (int i = 0; i < n; ++i) {
      if (rng.next_double() < 0.6) {
        ag.s_edges.push_back({i, distance(ag.s, topo.nodes[i].pos)});
      }
      if (rng.next_double() < 0.6) {
        ag.g_edges.push_back({i, distance(ag.g, topo.nodes[i].pos)});
      }
    }
    if (rng.next_double() < 0.3) ag.sg_edge = distance(ag.s, ag.g);

    // Exhaustive simple-path enumeration.
    struct Arc {
      int to;
      double w;
    };
    std::vector<std::vector<Arc>> adj(n + 2);
    for (const TopoEdge& e : topo.edges) {
      adj[e.a].push_back({e.b, e.length});
      adj[e.b].push_back({e.a, e.length});
    }
    for (const auto& [node, len] : ag.s_edges) {
      adj[n].push_back({node, len});
      adj[node].push_back({n, len});
    }
    for (const auto& [node, len] : ag.g_edges) {
      adj[n + 1].push_back({node, len});
      adj[node].push_back({n + 1, len});
    }
    if (ag.sg_edge) adj[n].push_back({n + 1, *ag.sg_edge});

    double best = std::numeric_limits<double>::infinity();
    std::vector<bool> visited(n + 2, false);
    const std::function<void(int, double)> dfs = [&](int u, double len) {
      if (len >= best) return;
      if (u == n + 1) {
        best = len;
        return;
      }
      visited[u] = true;
      for (const Arc& arc : adj[u]) {
        if (!visited[arc.to]) dfs(arc.to, len + arc.w);
      }
      visited[u] = false;
    };
    dfs(n, 0.0);

    const auto path = shortest_graph_path(ag);
    const bool enum_reachable = std::isfinite(best);
    if (enum_reachable != path.has_value()) {
      ++mismatches;
    } else if (path && std::abs(path->length - best) > 1e-9) {
      ++mismatches;
    }
  }
  expect(failures, mismatches == 0,
         std::to_string(mismatches) + " of 200 graphs disagreed");
  return failures;
}

// ---------------------------------------------------------------------------
// Criterion 7: reduction property on zero-obstacle scenes, 20 seeds.
// ---------------------------------------------------------------------------

CheckList criterion7() {
  CheckList failures;
  ScenarioConfig cfg;
  cfg.n_obstacles = 0;
  cfg.n_episodes = 1;
  for (int seed = 1; seed <= 20; ++seed) {
    cfg.rng_seed = static_cast<std::uint64_t>(seed);
    const Scenario scenario = generate_scenario(
        cfg, derive_seed(cfg.rng_seed, 0, RngStream::scenario));
    const auto starts_seed = derive_seed(cfg.rng_seed, 0, RngStream::starts);
    const auto goals_seed = derive_seed(cfg.rng_seed, 0, RngStream::goals);
    const EpisodeLog orca = run_episode(cfg, scenario, Policy::plain_orca, 0,
                                        starts_seed, goals_seed);
    const EpisodeLog topo = run_episode(cfg, scenario, Policy::topo_guided, 0,
                                        starts_seed, goals_seed);
    bool identical = orca.records.size() == topo.records.size();
    for (std::size_t i = 0; identical && i < orca.records.size(); ++i) {
      identical = orca.records[i].position.x == topo.records[i].position.x &&
                  orca.records[i].position.y == topo.records[i].position.y &&
                  orca.records[i].velocity.x == topo.records[i].velocity.x &&
                  orca.records[i].velocity.y == topo.records[i].velocity.y;
    }
    expect(failures, identical,
           "seed " + std::to_string(seed) + ": trajectories diverged");
  }
  return failures;
}

// ---------------------------------------------------------------------------
// Criterion 8: crowding degradation (10 agents worse than 4, per policy).
// ---------------------------------------------------------------------------

CheckList criterion8() {
  CheckList failures;
  const PairedReports four = run_paired(4, 200);
  const PairedReports ten = run_paired(10, 200);

  // Crowding must leave every statistic strictly worse, except that a metric
  // already at its zero floor in the 4-agent run only needs to not improve.
  const auto worse_up = [&](double m4, double m10, const std::string& what) {
    expect(failures, m4 > 0.0 ? m10 > m4 : m10 >= m4,
           what + " did not rise (" + fmt(m4) + " -> " + fmt(m10) + ")");
  };
  const auto check_policy = [&](const MetricsReport& m4,
                                const MetricsReport& m10,
                                const std::string& tag) {
    expect(failures, m10.avg_velocity_per_path < m4.avg_velocity_per_path,
           tag + " velocity did not drop (" + fmt(m4.avg_velocity_per_path) +
               " -> " + fmt(m10.avg_velocity_per_path) + ")");
    worse_up(m4.pct_mutual_frozen, m10.pct_mutual_frozen,
             tag + " mutual frozen");
    worse_up(m4.pct_frozen_per_path, m10.pct_frozen_per_path,
             tag + " frozen/path");
    worse_up(m4.avg_occupied_paths, m10.avg_occupied_paths,
             tag + " occupied paths");
    worse_up(m4.pct_stuck_agents, m10.pct_stuck_agents, tag + " stuck agents");
  };
  check_policy(four.topo, ten.topo, "topo");
  check_policy(four.orca, ten.orca, "orca");
  return failures;
}

// ---------------------------------------------------------------------------
// Criterion 9: byte-identical replay, independent of --jobs.
// ---------------------------------------------------------------------------

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream oss;
  oss << in.rdbuf();
  return oss.str();
}

CheckList criterion9() {
  CheckList failures;
  ScenarioConfig cfg;
  cfg.n_episodes = 10;
  cfg.rng_seed = 99;
  cfg.jobs = 1;

  const fs::path base = fs::temp_directory_path() / "topo_orca_acceptance9";
  fs::remove_all(base);
  const fs::path a = base / "a";
  const fs::path b = base / "b";
  expect(failures, cmd_simulate(cfg, "both", a.string()) == 0,
         "first simulate failed");

  // Replay from the manifest with a different worker count.
  ScenarioConfig replay = parse_config_file((a / "manifest.txt").string());
  replay.jobs = 2;
  expect(failures, cmd_simulate(replay, "both", b.string()) == 0,
         "replay simulate failed");

  for (const char* name :
       {"metrics_orca.txt", "metrics_topo.txt", "comparison.txt"}) {
    if (slurp(a / name) != slurp(b / name)) {
      expect(failures, false, std::string(name) + " differs between runs");
    }
  }
  int compared = 0;
  if (fs::is_directory(a / "logs")) {
    for (const auto& entry : fs::directory_iterator(a / "logs")) {
      const fs::path other = b / "logs" / entry.path().filename();
      if (!fs::exists(other) || slurp(entry.path()) != slurp(other)) {
        expect(failures, false,
               "log differs: " + entry.path().filename().string());
      }
      ++compared;
    }
  }
  expect(failures, compared == 20, "expected 20 log files, compared " +
                                       std::to_string(compared));
  fs::remove_all(base);
  return failures;
}

struct Criterion {
  int number;
  const char* title;
  std::function<CheckList()> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> kCriteria = {
      {1, "directional Table-1 reproduction (4 and 10 agents, 200 episodes)",
       criterion1},
      {2, "stall-case resolution (20 seeded wall placements)", criterion2},
      {3, "LP oracle equivalence (1000 random feasible sets)", criterion3},
      {4, "collision-freedom (50 seeded 10-agent episodes)", criterion4},
      {5, "thinning properties (idempotence, components, cycle rank)",
       criterion5},
      {6, "shortest-path oracle (200 graphs vs enumeration)", criterion6},
      {7, "reduction property (zero obstacles, 20 seeds)", criterion7},
      {8, "crowding degradation (10 vs 4 agents)", criterion8},
      {9, "determinism (manifest replay, --jobs invariance)", criterion9},
  };
  return kCriteria;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));

  int failures_total = 0;
  for (const Criterion& c : criteria()) {
    if (!selected.empty() &&
        std::find(selected.begin(), selected.end(), c.number) ==
            selected.end()) {
      continue;
    }
    CheckList failures;
    try {
      failures = c.run();
    } catch (const std::exception& e) {
      failures.push_back(std::string("exception: ") + e.what());
    }
    if (failures.empty()) {
      std::cout << "PASS criterion " << c.number << ": " << c.title << "\n";
    } else {
      ++failures_total;
      std::cout << "FAIL criterion " << c.number << ": " << c.title << "\n";
      for (const std::string& f : failures) {
        std::cout << "      - " << f << "\n";
      }
    }
    std::cout.flush();
  }
  return failures_total;
}
