// SPDX-License-Identifier: Apache-2.0

#include "topo_orca/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "topo_orca/metrics.hpp"
#include "topo_orca/simulation.hpp"
#include "topo_orca/svg.hpp"

namespace topo_orca {

namespace fs = std::filesystem;

std::optional<std::string> parse_policy_selection(const std::string& s) {
  if (s == "orca" || s == "topo" || s == "both") return s;
  return std::nullopt;
}

namespace {

std::string episode_log_name(int episode, const std::string& policy) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "ep%04d_%s.log", episode, policy.c_str());
  return buf;
}

void write_file(const fs::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open for writing: " + path.string());
  }
  out << contents;
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::string metrics_file_contents(const std::vector<EpisodeLog>& logs,
                                  const std::string& policy, double theta) {
  std::ostringstream oss;
  write_metrics_kv(compute_metrics(logs, theta), policy, oss);
  return oss.str();
}

}  // namespace

int cmd_simulate(const ScenarioConfig& cfg, const std::string& policy,
                 const std::string& out_dir) {
  const auto t0 = std::chrono::steady_clock::now();
  PolicySelection selection;
  if (policy == "orca") {
    selection = PolicySelection::orca_only;
  } else if (policy == "topo") {
    selection = PolicySelection::topo_only;
  } else {
    selection = PolicySelection::both;
  }

  try {
    const fs::path out(out_dir);
    fs::create_directories(out / "logs");

    // Manifest first: re-running `simulate --config manifest.txt` reproduces
    // every artifact bit-exactly.
    {
      std::ostringstream oss;
      oss << "# topo-orca run manifest (tool version " << kToolVersion
          << ")\n";
      oss << "# replay with: topo-orca simulate --config manifest.txt --out "
             "DIR --policy "
          << policy << "\n";
      oss << "# layout: logs/ep####_<policy>.log, metrics_<policy>.txt"
          << (policy == "both" ? ", comparison.txt" : "") << "\n";
      write_config(cfg, oss);
      write_file(out / "manifest.txt", oss.str());
    }

    const BenchmarkResult result = run_benchmark(cfg, selection);
    for (int e : result.skipped_episodes) {
      std::cerr << "warning: episode " << e
                << " skipped (scenario infeasible)\n";
    }

    const auto dump_logs = [&](const std::vector<EpisodeLog>& logs,
                               const std::string& name) {
      std::vector<EpisodeLog> quantized_logs;
      quantized_logs.reserve(logs.size());
      for (const EpisodeLog& log : logs) {
        std::ostringstream oss;
        write_log(log, oss);
        write_file(out / "logs" / episode_log_name(log.episode, name),
                   oss.str());
        quantized_logs.push_back(quantized(log));
      }
      return quantized_logs;
    };

    std::vector<EpisodeLog> orca_q;
    std::vector<EpisodeLog> topo_q;
    if (selection != PolicySelection::topo_only) {
      orca_q = dump_logs(result.orca_logs, "orca");
      write_file(out / "metrics_orca.txt",
                 metrics_file_contents(orca_q, "orca", cfg.theta));
    }
    if (selection != PolicySelection::orca_only) {
      topo_q = dump_logs(result.topo_logs, "topo");
      write_file(out / "metrics_topo.txt",
                 metrics_file_contents(topo_q, "topo", cfg.theta));
    }
    if (selection == PolicySelection::both) {
      std::ostringstream oss;
      write_metrics_table(compute_metrics(topo_q, cfg.theta),
                          compute_metrics(orca_q, cfg.theta), oss);
      write_file(out / "comparison.txt", oss.str());
      std::cout << oss.str();
    }

    const auto t1 = std::chrono::steady_clock::now();
    const double seconds =
        std::chrono::duration<double>(t1 - t0).count();
    {
      std::ofstream app(out / "manifest.txt", std::ios::app);
      app << "# wall_clock_seconds = " << seconds << "\n";
    }
    std::cout << "wrote " << out_dir << " in " << seconds << " s\n";
    return 0;
  } catch (const ScenarioInfeasible& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << " (out dir: " << out_dir << ")\n";
    return 1;
  }
}

int cmd_metrics(const std::string& log_dir, const std::string& out_dir,
                double theta) {
  try {
    const fs::path dir(log_dir);
    fs::path logs_dir = dir;
    if (fs::is_directory(dir / "logs")) logs_dir = dir / "logs";

    std::vector<fs::path> files;
    if (fs::is_directory(logs_dir)) {
      for (const auto& entry : fs::directory_iterator(logs_dir)) {
        if (entry.path().extension() == ".log") files.push_back(entry.path());
      }
    }
    if (files.empty()) {
      std::cerr << "error: no .log files under " << log_dir << "\n";
      return 1;
    }
    std::sort(files.begin(), files.end());

    std::vector<EpisodeLog> orca_logs;
    std::vector<EpisodeLog> topo_logs;
    bool any_error = false;
    for (const fs::path& f : files) {
      std::ifstream in(f);
      if (!in) {
        std::cerr << "error: cannot open " << f << "\n";
        any_error = true;
        continue;
      }
      try {
        EpisodeLog log = parse_log(in, f.string());
        (log.policy == Policy::plain_orca ? orca_logs : topo_logs)
            .push_back(std::move(log));
      } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        any_error = true;
      }
    }
    if (any_error) {
      std::cerr << "error: refusing to write a partial report\n";
      return 1;
    }

    const auto by_episode = [](const EpisodeLog& a, const EpisodeLog& b) {
      return a.episode < b.episode;
    };
    std::sort(orca_logs.begin(), orca_logs.end(), by_episode);
    std::sort(topo_logs.begin(), topo_logs.end(), by_episode);

    const fs::path out = out_dir.empty() ? dir : fs::path(out_dir);
    fs::create_directories(out);
    if (!orca_logs.empty()) {
      write_file(out / "metrics_orca.txt",
                 metrics_file_contents(orca_logs, "orca", theta));
    }
    if (!topo_logs.empty()) {
      write_file(out / "metrics_topo.txt",
                 metrics_file_contents(topo_logs, "topo", theta));
    }
    if (!orca_logs.empty() && !topo_logs.empty()) {
      std::ostringstream oss;
      write_metrics_table(compute_metrics(topo_logs, theta),
                          compute_metrics(orca_logs, theta), oss);
      write_file(out / "comparison.txt", oss.str());
      std::cout << oss.str();
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

int cmd_render(const RenderRequest& request) {
  try {
    SvgScene scene;
    TopoGraph scene_graph;
    if (!request.log_path.empty()) {
      std::ifstream in(request.log_path);
      if (!in) {
        std::cerr << "error: cannot open " << request.log_path << "\n";
        return 1;
      }
      const EpisodeLog log = parse_log(in, request.log_path);
      scene.world_w = log.world_w;
      scene.world_h = log.world_h;
      scene.obstacles = log.obstacles;
      scene.agent_radius = log.agent_radius;
      scene.trajectories.assign(log.n_agents, {});
      for (int a = 0; a < log.n_agents; ++a) {
        scene.trajectories[a].push_back(log.starts[a]);
      }
      for (const FrameRecord& r : log.records) {
        scene.trajectories[r.agent].push_back(r.position);
      }
      for (int a = 0; a < log.n_agents; ++a) {
        scene.agents.push_back(scene.trajectories[a].back());
      }
    } else if (request.scenario) {
      const ScenarioConfig& cfg = request.cfg;
      const std::uint64_t scenario_seed =
          derive_seed(cfg.rng_seed, static_cast<std::uint64_t>(request.episode),
                      RngStream::scenario);
      const Scenario scenario = generate_scenario(cfg, scenario_seed);
      scene.world_w = cfg.world_w;
      scene.world_h = cfg.world_h;
      scene.obstacles = scenario.obstacles;
      scene.agent_radius = cfg.agent_radius;

      scene_graph = scenario.graph;
      scene.graph = &scene_graph;

      if (!request.pgm_path.empty()) {
        std::ofstream pgm(request.pgm_path, std::ios::binary);
        if (!pgm) {
          std::cerr << "error: cannot open " << request.pgm_path << "\n";
          return 1;
        }
        write_pgm(scenario.grid, pgm);
      }
      if (!request.graph_path.empty()) {
        std::ofstream gout(request.graph_path, std::ios::binary);
        if (!gout) {
          std::cerr << "error: cannot open " << request.graph_path << "\n";
          return 1;
        }
        write_graph(scenario.graph, gout);
      }

      if (request.plan_agent >= 0) {
        // Reproduce the episode's start and first goal for that agent, then
        // draw its waypoint plan.
        const EpisodeLog log =
            run_episode(cfg, scenario, Policy::topo_guided, request.episode,
                        derive_seed(cfg.rng_seed,
                                    static_cast<std::uint64_t>(request.episode),
                                    RngStream::starts),
                        derive_seed(cfg.rng_seed,
                                    static_cast<std::uint64_t>(request.episode),
                                    RngStream::goals));
        const int a = std::min(request.plan_agent, cfg.n_agents - 1);
        Agent probe;
        probe.id = a;
        probe.position = log.starts[a];
        probe.goal = log.goals[a].pos;
        probe.radius = cfg.agent_radius;
        probe.max_speed = cfg.max_speed;
        const auto plan = plan_for(probe, scenario.graph, scenario.grid);
        if (plan) scene.plan = plan->waypoints;
        scene.agents.push_back(probe.position);
        scene.goals.push_back(probe.goal);
        if (plan && !request.plan_path.empty()) {
          std::ofstream pout(request.plan_path, std::ios::binary);
          if (!pout) {
            std::cerr << "error: cannot open " << request.plan_path << "\n";
            return 1;
          }
          char buf[64];
          for (const Vec2& w : plan->waypoints) {
            std::snprintf(buf, sizeof(buf), "%.6f %.6f\n", w.x, w.y);
            pout << buf;
          }
        }
      }
    } else {
      std::cerr << "error: render needs --log FILE or --scenario\n";
      return 1;
    }

    std::ofstream out(request.out_path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot open " << request.out_path
                << " for writing\n";
      return 1;
    }
    write_svg(scene, out);
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace topo_orca
