// SPDX-License-Identifier: Apache-2.0

#include <CLI11.hpp>
#include <cstdint>
#include <iostream>
#include <string>

#include "topo_orca/cli.hpp"
#include "topo_orca/config.hpp"

namespace {

/// Layered resolution: defaults, then the config file, then explicit flags.
/// Every flag also honors a TOPO_ORCA_* environment variable.
struct SimArgs {
  std::string config_path;
  std::string policy = "both";
  std::string out_dir = "out";
  int episodes = -1;
  int agents = -1;
  long long obstacles = -1;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int jobs = -1;
};

topo_orca::ScenarioConfig resolve_config(const SimArgs& args) {
  topo_orca::ScenarioConfig cfg;
  if (!args.config_path.empty()) {
    cfg = topo_orca::parse_config_file(args.config_path);
  }
  if (args.episodes >= 0) cfg.n_episodes = args.episodes;
  if (args.agents >= 0) cfg.n_agents = args.agents;
  if (args.obstacles >= 0) cfg.n_obstacles = static_cast<int>(args.obstacles);
  if (args.seed_set) cfg.rng_seed = args.seed;
  if (args.jobs >= 1) cfg.jobs = args.jobs;
  cfg.validate();
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deterministic 2D crowd-simulation benchmark: plain ORCA vs "
               "topology-guided ORCA"};
  app.require_subcommand(1);

  SimArgs sim;
  auto* simulate = app.add_subcommand(
      "simulate", "Run the paired benchmark and write logs + metrics");
  simulate->add_option("--config", sim.config_path, "Config file (key = value)")
      ->envname("TOPO_ORCA_CONFIG");
  simulate->add_option("--policy", sim.policy, "orca | topo | both")
      ->envname("TOPO_ORCA_POLICY")
      ->check(CLI::IsMember({"orca", "topo", "both"}));
  simulate->add_option("--episodes", sim.episodes, "Number of episodes")
      ->envname("TOPO_ORCA_EPISODES");
  simulate->add_option("--agents", sim.agents, "Number of agents")
      ->envname("TOPO_ORCA_AGENTS");
  simulate->add_option("--obstacles", sim.obstacles, "Number of obstacles")
      ->envname("TOPO_ORCA_OBSTACLES");
  auto* seed_opt =
      simulate->add_option("--seed", sim.seed, "Master 64-bit seed")
          ->envname("TOPO_ORCA_SEED");
  simulate->add_option("--jobs", sim.jobs, "Episode-level worker threads")
      ->envname("TOPO_ORCA_JOBS");
  simulate->add_option("--out", sim.out_dir, "Output directory")
      ->envname("TOPO_ORCA_OUT");

  std::string metrics_dir;
  std::string metrics_out;
  auto* metrics = app.add_subcommand(
      "metrics", "Recompute the metrics report from a directory of logs");
  metrics->add_option("--logs", metrics_dir, "Directory with .log files")
      ->required();
  metrics->add_option("--out", metrics_out,
                      "Where to write reports (default: --logs dir)");

  topo_orca::RenderRequest render_req;
  std::string render_config;
  auto* render = app.add_subcommand(
      "render", "Render an episode log or a generated scenario to SVG");
  render->add_option("--log", render_req.log_path, "Episode log to draw");
  render->add_flag("--scenario", render_req.scenario,
                   "Draw the generated environment and its graph");
  render->add_option("--config", render_config, "Config file for --scenario");
  render->add_option("--episode", render_req.episode,
                     "Episode index for --scenario layouts");
  render->add_option("--plan-agent", render_req.plan_agent,
                     "Also draw this agent's waypoint plan");
  render->add_option("--pgm", render_req.pgm_path,
                     "Also dump the occupancy grid as P2 PGM");
  render->add_option("--graph", render_req.graph_path,
                     "Also dump the topological graph as text");
  render->add_option("--plan-out", render_req.plan_path,
                     "Also dump the waypoint plan as `x y` lines");
  render->add_option("--out", render_req.out_path, "Output .svg path")
      ->required();
  auto* render_seed =
      render->add_option("--seed", render_req.cfg.rng_seed, "Master seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) {
      sim.seed_set = seed_opt->count() > 0;
      return topo_orca::cmd_simulate(resolve_config(sim), sim.policy,
                                     sim.out_dir);
    }
    if (metrics->parsed()) {
      return topo_orca::cmd_metrics(metrics_dir, metrics_out);
    }
    if (render->parsed()) {
      if (render_req.scenario && !render_config.empty()) {
        const std::uint64_t seed = render_req.cfg.rng_seed;
        render_req.cfg = topo_orca::parse_config_file(render_config);
        if (render_seed->count() > 0) render_req.cfg.rng_seed = seed;
      }
      return topo_orca::cmd_render(render_req);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
