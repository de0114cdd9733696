// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "topo_orca/config.hpp"

namespace topo_orca {

inline constexpr const char* kToolVersion = "0.1.0";

/// Selection string from the CLI: "orca", "topo", or "both".
std::optional<std::string> parse_policy_selection(const std::string& s);

/// Runs the benchmark and writes manifest.txt, logs/ep*_<policy>.log,
/// metrics_<policy>.txt, and (for "both") comparison.txt under out_dir.
/// Returns the process exit code and reports problems on stderr.
int cmd_simulate(const ScenarioConfig& cfg, const std::string& policy,
                 const std::string& out_dir);

/// Recomputes metrics_<policy>.txt from the logs in log_dir alone, writing
/// next to the logs (or to out_dir when given). Byte-identical to what
/// cmd_simulate wrote for the same logs.
int cmd_metrics(const std::string& log_dir, const std::string& out_dir = "",
                double theta = -1.0);

struct RenderRequest {
  std::string log_path;     // render a recorded episode when set
  bool scenario = false;    // render the generated environment when set
  ScenarioConfig cfg;       // scenario mode configuration
  int episode = 0;          // scenario mode: which episode's layout
  int plan_agent = -1;      // scenario mode: draw this agent's waypoint plan
  std::string out_path;
  std::string pgm_path;     // optional: dump the occupancy grid (P2 PGM)
  std::string graph_path;   // optional: dump the topological graph as text
  std::string plan_path;    // optional: dump the plan as `x y` lines
};

int cmd_render(const RenderRequest& request);

}  // namespace topo_orca
