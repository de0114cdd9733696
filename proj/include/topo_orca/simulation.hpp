// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "topo_orca/config.hpp"
#include "topo_orca/grid.hpp"
#include "topo_orca/guidance.hpp"
#include "topo_orca/orca.hpp"
#include "topo_orca/rng.hpp"
#include "topo_orca/topology.hpp"

namespace topo_orca {

struct ScenarioInfeasible : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Static data of one episode environment.
struct Scenario {
  std::vector<RectObstacle> obstacles;
  OccupancyGrid grid;  // inflated by the agent radius
  TopoGraph graph;     // pruned topological graph
  std::vector<ObstacleVertex> vertices;  // raw boundary for ORCA
};

struct FrameRecord {
  int frame = 0;
  int agent = 0;
  Vec2 position;
  Vec2 velocity;
  int goal_id = 0;
  int path_index = 0;
};

struct GoalAssignment {
  int goal_id = 0;
  int agent = 0;
  Vec2 pos;
  int frame = -1;  // frame after which the goal became active; -1 = initial
};

struct ReachEvent {
  int agent = 0;
  int frame = 0;
  int path_index = 0;
};

/// Complete trajectory record of one episode under one policy; the sole
/// input to the metrics suite. Records are frame-major, agent-minor.
struct EpisodeLog {
  int episode = 0;
  Policy policy = Policy::plain_orca;
  std::uint64_t seed = 0;

  double world_w = 0.0;
  double world_h = 0.0;
  double cell_size = 0.0;
  double inflation = 0.0;
  int n_agents = 0;
  double agent_radius = 0.0;
  double max_speed = 0.0;
  double neighbor_dist = 0.0;
  double time_horizon = 0.0;
  double time_horizon_obst = 0.0;
  double reach_radius = 0.0;
  double theta = 0.0;
  int frames = 0;

  std::vector<RectObstacle> obstacles;
  std::vector<Vec2> starts;
  std::vector<GoalAssignment> goals;  // goal_id == index
  std::vector<FrameRecord> records;
  std::vector<ReachEvent> events;

  /// Per frame, per agent: 1 when the LP fell back to the second stage.
  /// In-memory only; not serialized.
  std::vector<std::uint8_t> fallback;

  const FrameRecord& record(int frame, int agent) const {
    return records[static_cast<std::size_t>(frame) * n_agents + agent];
  }
};

/// Samples obstacle layouts by rejection until the inflated grid is at least
/// min_traversable free, the inflated obstacles stay pairwise disjoint and
/// clear of the boundary band (so every obstacle punches its own hole), and
/// the free space is one 8-connected component. Throws ScenarioInfeasible
/// after 1000 rejected layouts.
Scenario generate_scenario(const ScenarioConfig& cfg, std::uint64_t seed);

/// Uniform rejection sample over free space: at least 2 radii from every
/// other agent's current goal and goal_min_dist_frac of the world diagonal
/// from `agent_pos`. When the sampling budget runs out the distance
/// constraint is relaxed and sampling retried once.
Vec2 assign_goal(const ScenarioConfig& cfg, const Scenario& scenario,
                 Rng& rng, Vec2 agent_pos,
                 const std::vector<Vec2>& other_goals);

/// Runs one episode. Start positions come from the `starts` stream and goals
/// from the `goals` stream; both policies of a paired comparison are given
/// identically seeded streams so they see the same starts and the same goal
/// randomness.
EpisodeLog run_episode(const ScenarioConfig& cfg, const Scenario& scenario,
                       Policy policy, int episode_index,
                       std::uint64_t starts_seed, std::uint64_t goals_seed);

enum class PolicySelection { orca_only, topo_only, both };

struct BenchmarkResult {
  std::vector<EpisodeLog> orca_logs;  // empty unless selected
  std::vector<EpisodeLog> topo_logs;
  std::vector<int> skipped_episodes;
};

/// Runs the full paired benchmark: per episode a scenario is generated from
/// a seed derived from (rng_seed, episode), then every selected policy runs
/// on that same scenario with identical start positions and goal streams.
/// Episodes run on cfg.jobs workers; results are byte-stable regardless of
/// worker count. Throws ScenarioInfeasible when 1% or more of the episodes
/// fail to generate.
BenchmarkResult run_benchmark(const ScenarioConfig& cfg,
                              PolicySelection selection);

/// Rounds through the 6-fractional-digit wire format, exactly as write_log
/// followed by parse_log would. Metrics are always computed on quantized
/// logs so a report recomputed from files matches byte for byte.
double q6(double v);
EpisodeLog quantized(const EpisodeLog& log);

/// Line-delimited log format: `episode frame agent x y vx vy goal_id
/// path_index` records (6 fractional digits) with `#`-prefixed scenario
/// snapshot, goal, and reach-event lines.
void write_log(const EpisodeLog& log, std::ostream& out);
EpisodeLog parse_log(std::istream& in, const std::string& origin);

}  // namespace topo_orca
