// SPDX-License-Identifier: Apache-2.0

#include "topo_orca/metrics.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>

namespace topo_orca {

FrameStatus classify_frames(const EpisodeLog& log, double theta) {
  FrameStatus status;
  status.frames = log.frames;
  status.agents = log.n_agents;
  status.frozen.assign(static_cast<std::size_t>(log.frames) * log.n_agents, 0);

  const double speed_threshold_sq =
      (theta * log.max_speed) * (theta * log.max_speed);
  const double reach_sq = log.reach_radius * log.reach_radius;

  for (const FrameRecord& r : log.records) {
    if (norm_sq(r.velocity) >= speed_threshold_sq) continue;
    const Vec2 goal = log.goals[r.goal_id].pos;
    if (distance_sq(r.position, goal) <= reach_sq) continue;  // idling at goal
    status.frozen[static_cast<std::size_t>(r.frame) * log.n_agents + r.agent] =
        1;
  }
  return status;
}

std::vector<PathRecord> path_records(const EpisodeLog& log,
                                     const FrameStatus& status) {
  std::vector<PathRecord> out;
  for (int a = 0; a < log.n_agents; ++a) {
    std::vector<const ReachEvent*> events;
    for (const ReachEvent& e : log.events) {
      if (e.agent == a) events.push_back(&e);
    }

    const auto build = [&](int path_index, int start, int end, bool completed) {
      if (start > end) return;  // a reach on the last frame opens no window
      PathRecord rec;
      rec.agent = a;
      rec.path_index = path_index;
      rec.start_frame = start;
      rec.end_frame = end;
      rec.completed = completed;
      Vec2 prev = start == 0 ? log.starts[a]
                             : log.record(start - 1, a).position;
      int run = 0;
      for (int f = start; f <= end; ++f) {
        const FrameRecord& r = log.record(f, a);
        rec.distance += distance(prev, r.position);
        prev = r.position;
        if (status.is_frozen(f, a)) {
          ++rec.frozen_frames;
          ++run;
          rec.max_frozen_run = std::max(rec.max_frozen_run, run);
        } else {
          run = 0;
        }
      }
      out.push_back(rec);
    };

    int prev_end = -1;
    int path_index = 0;
    for (const ReachEvent* e : events) {
      build(path_index, prev_end + 1, e->frame, true);
      prev_end = e->frame;
      ++path_index;
    }
    build(path_index, prev_end + 1, log.frames - 1, false);
  }
  return out;
}

namespace {

std::vector<FrameStatus> classify_all(const std::vector<EpisodeLog>& logs,
                                      double theta) {
  std::vector<FrameStatus> statuses;
  statuses.reserve(logs.size());
  for (const EpisodeLog& log : logs) {
    statuses.push_back(classify_frames(log, theta >= 0.0 ? theta : log.theta));
  }
  return statuses;
}

}  // namespace

double avg_velocity_per_path(const std::vector<EpisodeLog>& logs) {
  double sum = 0.0;
  std::size_t count = 0;
  for (const EpisodeLog& log : logs) {
    const FrameStatus status = classify_frames(log, log.theta);
    for (const PathRecord& rec : path_records(log, status)) {
      sum += rec.distance / rec.frame_count();
      ++count;
    }
  }
  return count == 0 ? 0.0 : sum / static_cast<double>(count);
}

double pct_mutual_frozen(const std::vector<EpisodeLog>& logs,
                         const std::vector<FrameStatus>& statuses) {
  double sum = 0.0;
  for (std::size_t i = 0; i < logs.size(); ++i) {
    const FrameStatus& status = statuses[i];
    int mutual = 0;
    for (int f = 0; f < status.frames; ++f) {
      bool all = true;
      for (int a = 0; a < status.agents && all; ++a) {
        all = status.is_frozen(f, a);
      }
      mutual += all ? 1 : 0;
    }
    sum += 100.0 * mutual / static_cast<double>(status.frames);
  }
  return logs.empty() ? 0.0 : sum / static_cast<double>(logs.size());
}

double pct_frozen_per_path(const std::vector<EpisodeLog>& logs,
                           const std::vector<FrameStatus>& statuses) {
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < logs.size(); ++i) {
    for (const PathRecord& rec : path_records(logs[i], statuses[i])) {
      sum += 100.0 * rec.frozen_frames / static_cast<double>(rec.frame_count());
      ++count;
    }
  }
  return count == 0 ? 0.0 : sum / static_cast<double>(count);
}

std::pair<double, double> occupied_paths(
    const std::vector<EpisodeLog>& logs,
    const std::vector<FrameStatus>& statuses) {
  double occupied_sum = 0.0;
  double total_sum = 0.0;
  for (std::size_t i = 0; i < logs.size(); ++i) {
    int occupied = 0;
    int total = 0;
    for (const PathRecord& rec : path_records(logs[i], statuses[i])) {
      ++total;
      if (rec.max_frozen_run >= 30) ++occupied;
    }
    occupied_sum += occupied;
    total_sum += total;
  }
  if (logs.empty()) return {0.0, 0.0};
  const double n = static_cast<double>(logs.size());
  return {occupied_sum / n, total_sum / n};
}

double pct_stuck_agents(const std::vector<EpisodeLog>& logs) {
  const double avg_velocity = avg_velocity_per_path(logs);
  std::size_t stuck = 0;
  std::size_t total = 0;
  for (const EpisodeLog& log : logs) {
    for (int a = 0; a < log.n_agents; ++a) {
      ++total;
      bool reached = false;
      for (const ReachEvent& e : log.events) {
        if (e.agent == a) {
          reached = true;
          break;
        }
      }
      if (reached) continue;
      double dist = 0.0;
      Vec2 prev = log.starts[a];
      for (int f = 0; f < log.frames; ++f) {
        const Vec2 p = log.record(f, a).position;
        dist += distance(prev, p);
        prev = p;
      }
      const double mean_speed = dist / static_cast<double>(log.frames);
      if (mean_speed < avg_velocity / 3.0) ++stuck;
    }
  }
  return total == 0 ? 0.0
                    : 100.0 * static_cast<double>(stuck) /
                          static_cast<double>(total);
}

MetricsReport compute_metrics(const std::vector<EpisodeLog>& logs,
                              double theta) {
  MetricsReport report;
  if (logs.empty()) return report;
  const std::vector<FrameStatus> statuses = classify_all(logs, theta);
  report.avg_velocity_per_path = avg_velocity_per_path(logs);
  report.pct_mutual_frozen = pct_mutual_frozen(logs, statuses);
  report.pct_frozen_per_path = pct_frozen_per_path(logs, statuses);
  const auto [occupied, total] = occupied_paths(logs, statuses);
  report.avg_occupied_paths = occupied;
  report.avg_total_paths = total;
  report.pct_stuck_agents = pct_stuck_agents(logs);
  report.episodes = static_cast<int>(logs.size());
  report.agents = logs.front().n_agents;
  return report;
}

namespace {

std::string f6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

}  // namespace

void write_metrics_kv(const MetricsReport& report, const std::string& policy,
                      std::ostream& out) {
  out << "policy " << policy << "\n";
  out << "episodes " << report.episodes << "\n";
  out << "agents " << report.agents << "\n";
  out << "avg_velocity_per_path " << f6(report.avg_velocity_per_path) << "\n";
  out << "pct_mutual_frozen_frames " << f6(report.pct_mutual_frozen) << "\n";
  out << "pct_frozen_frames_per_path " << f6(report.pct_frozen_per_path)
      << "\n";
  out << "avg_occupied_paths " << f6(report.avg_occupied_paths) << "\n";
  out << "avg_total_paths " << f6(report.avg_total_paths) << "\n";
  out << "pct_stuck_agents " << f6(report.pct_stuck_agents) << "\n";
}

void write_metrics_table(const MetricsReport& topo, const MetricsReport& orca,
                         std::ostream& out) {
  char buf[160];
  const auto row = [&](const char* name, const std::string& t,
                       const std::string& o) {
    std::snprintf(buf, sizeof(buf), "%-44s %14s %14s\n", name, t.c_str(),
                  o.c_str());
    out << buf;
  };
  std::snprintf(buf, sizeof(buf), "%-44s %14s %14s\n", "metric", "topo",
                "orca");
  out << buf;
  row("agent velocity (m/frame)", f6(topo.avg_velocity_per_path),
      f6(orca.avg_velocity_per_path));
  row("% mutual frozen frames per episode", f6(topo.pct_mutual_frozen),
      f6(orca.pct_mutual_frozen));
  row("% frozen frames per path", f6(topo.pct_frozen_per_path),
      f6(orca.pct_frozen_per_path));
  row("occupied paths / paths per episode",
      f6(topo.avg_occupied_paths) + "/" + f6(topo.avg_total_paths),
      f6(orca.avg_occupied_paths) + "/" + f6(orca.avg_total_paths));
  row("% stuck agents", f6(topo.pct_stuck_agents),
      f6(orca.pct_stuck_agents));
}

}  // namespace topo_orca
