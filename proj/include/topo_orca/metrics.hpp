// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "topo_orca/simulation.hpp"

namespace topo_orca {

/// Per-frame, per-agent moving/frozen classification of one episode.
struct FrameStatus {
  int frames = 0;
  int agents = 0;
  std::vector<std::uint8_t> frozen;  // [frame * agents + agent]

  bool is_frozen(int frame, int agent) const {
    return frozen[static_cast<std::size_t>(frame) * agents + agent] != 0;
  }
};

/// One start-to-goal attempt. The window [start_frame, end_frame] covers the
/// motion frames attributed to the path; incomplete paths end at the last
/// episode frame.
struct PathRecord {
  int agent = 0;
  int path_index = 0;
  int start_frame = 0;
  int end_frame = 0;
  bool completed = false;
  double distance = 0.0;
  int frozen_frames = 0;
  int max_frozen_run = 0;

  int frame_count() const { return end_frame - start_frame + 1; }
};

/// The five Table-style statistics for one policy over a log set.
struct MetricsReport {
  double avg_velocity_per_path = 0.0;
  double pct_mutual_frozen = 0.0;
  double pct_frozen_per_path = 0.0;
  double avg_occupied_paths = 0.0;
  double avg_total_paths = 0.0;
  double pct_stuck_agents = 0.0;
  int episodes = 0;
  int agents = 0;
};

/// A frame is frozen iff the agent's speed is below theta * max_speed while
/// it is farther than the goal-reach radius from the goal it is pursuing.
/// Frames spent sitting at the goal are `moving`.
FrameStatus classify_frames(const EpisodeLog& log, double theta);

std::vector<PathRecord> path_records(const EpisodeLog& log,
                                     const FrameStatus& status);

/// Metric 1: mean of distance / frames over every path of every episode
/// (incomplete paths use the truncated window).
double avg_velocity_per_path(const std::vector<EpisodeLog>& logs);

/// Metric 2: mean over episodes of the percentage of frames in which every
/// agent is frozen simultaneously.
double pct_mutual_frozen(const std::vector<EpisodeLog>& logs,
                         const std::vector<FrameStatus>& statuses);

/// Metric 3: mean over all paths of the percentage of frozen frames within
/// the path window.
double pct_frozen_per_path(const std::vector<EpisodeLog>& logs,
                           const std::vector<FrameStatus>& statuses);

/// Metric 4: (mean occupied paths, mean total paths) per episode; a path is
/// occupied iff it contains at least 30 consecutive frozen frames.
std::pair<double, double> occupied_paths(
    const std::vector<EpisodeLog>& logs,
    const std::vector<FrameStatus>& statuses);

/// Metric 5: percentage of (agent, episode) pairs with no goal reached in
/// the whole episode and an episode-long mean speed below one third of the
/// run-wide metric-1 velocity.
double pct_stuck_agents(const std::vector<EpisodeLog>& logs);

/// All five metrics; theta overrides the per-log value when >= 0.
MetricsReport compute_metrics(const std::vector<EpisodeLog>& logs,
                              double theta = -1.0);

/// Machine-readable report: one `key value` line per metric.
void write_metrics_kv(const MetricsReport& report, const std::string& policy,
                      std::ostream& out);

/// Fixed-layout comparison table (metrics as rows, policies as columns).
void write_metrics_table(const MetricsReport& topo, const MetricsReport& orca,
                         std::ostream& out);

}  // namespace topo_orca
