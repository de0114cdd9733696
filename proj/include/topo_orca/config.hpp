// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

namespace topo_orca {

enum class Policy { plain_orca, topo_guided };

std::string policy_name(Policy p);

/// Full benchmark configuration. Defaults reproduce the 4-agent setup:
/// 4 agents, 3 rectangular obstacles, 196-frame episodes, 200 episodes,
/// at least 80% traversable area, obstacle margin equal to the agent radius.
/// The arena (15 m, obstacle sides up to 10 m) is sized so that the
/// rejection sampler hugs the 80% floor and wall-like obstacles that
/// intercept straight paths are common.
struct ScenarioConfig {
  double world_w = 15.0;
  double world_h = 15.0;
  double cell_size = 0.1;
  int n_agents = 4;
  int n_obstacles = 3;
  double obstacle_min_size = 0.6;
  double obstacle_max_size = 10.0;
  double agent_radius = 0.3;
  double max_speed = 0.2;  // meters per frame
  double neighbor_dist = 3.0;
  double time_horizon = 10.0;
  double time_horizon_obst = 10.0;
  int frames_per_episode = 196;
  int n_episodes = 200;
  double min_traversable = 0.8;
  std::uint64_t rng_seed = 1;
  double goal_min_dist_frac = 0.25;  // of the world diagonal
  double theta = 0.3;                // frozen threshold, fraction of max_speed
  int jobs = 1;

  double inflation() const { return agent_radius; }
  double reach_radius() const { return 2.0 * agent_radius; }
  double prune_min_length() const { return 3.0 * agent_radius; }

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

/// Parses a flat `key = value` config file ('#' starts a comment). Unknown
/// keys, unparsable values, and constraint violations raise
/// std::invalid_argument naming the key and line. Starts from defaults (or
/// the passed base) so partial files are fine.
ScenarioConfig parse_config_file(const std::string& path,
                                 const ScenarioConfig& base = {});
ScenarioConfig parse_config_stream(std::istream& in,
                                   const ScenarioConfig& base,
                                   const std::string& origin);

/// Serializes every key in parse order; parse_config_file on the output
/// reproduces the config exactly.
void write_config(const ScenarioConfig& cfg, std::ostream& out);

}  // namespace topo_orca
