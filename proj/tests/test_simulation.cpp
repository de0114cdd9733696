// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <sstream>

#include "topo_orca/simulation.hpp"

using namespace topo_orca;

namespace {

ScenarioConfig small_cfg() {
  ScenarioConfig cfg;
  cfg.n_episodes = 2;
  cfg.n_agents = 4;
  cfg.frames_per_episode = 60;
  cfg.rng_seed = 11;
  return cfg;
}

}  // namespace

TEST_CASE("generate_scenario: default config meets its constraints") {
  const ScenarioConfig cfg = small_cfg();
  const Scenario s = generate_scenario(cfg, derive_seed(cfg.rng_seed, 0,
                                                        RngStream::scenario));
  CHECK(s.obstacles.size() == 3);
  CHECK(traversable_fraction(s.grid) >= cfg.min_traversable);
  CHECK(!s.graph.nodes.empty());
  // Obstacles pairwise clear of each other after inflation.
  for (std::size_t i = 0; i < s.obstacles.size(); ++i) {
    for (std::size_t j = i + 1; j < s.obstacles.size(); ++j) {
      CHECK(rect_gap(s.obstacles[i], s.obstacles[j]) > 2.0 * cfg.inflation());
    }
  }
}

TEST_CASE("generate_scenario: zero obstacles, graph still present") {
  ScenarioConfig cfg = small_cfg();
  cfg.n_obstacles = 0;
  const Scenario s = generate_scenario(cfg, 7);
  CHECK(s.obstacles.empty());
  CHECK(traversable_fraction(s.grid) > 0.9);
  CHECK(!s.graph.nodes.empty());
}

TEST_CASE("generate_scenario is deterministic") {
  const ScenarioConfig cfg = small_cfg();
  const Scenario a = generate_scenario(cfg, 99);
  const Scenario b = generate_scenario(cfg, 99);
  REQUIRE(a.obstacles.size() == b.obstacles.size());
  for (std::size_t i = 0; i < a.obstacles.size(); ++i) {
    CHECK(a.obstacles[i].min_corner.x == b.obstacles[i].min_corner.x);
    CHECK(a.obstacles[i].max_corner.y == b.obstacles[i].max_corner.y);
  }
  CHECK(a.graph.nodes.size() == b.graph.nodes.size());
  CHECK(a.graph.edges.size() == b.graph.edges.size());
}

TEST_CASE("assign_goal: free, separated, reproducible") {
  const ScenarioConfig cfg = small_cfg();
  const Scenario s = generate_scenario(cfg, 3);

  Rng rng_a(42);
  Rng rng_b(42);
  std::vector<Vec2> goals;
  for (int i = 0; i < 50; ++i) {
    const Vec2 g = assign_goal(cfg, s, rng_a, {10.0, 10.0}, goals);
    const Vec2 g2 = assign_goal(cfg, s, rng_b, {10.0, 10.0}, goals);
    CHECK(g.x == g2.x);
    CHECK(g.y == g2.y);
    CHECK_FALSE(s.grid.blocked_at(g));
    for (const RectObstacle& r : s.obstacles) {
      CHECK(rect_distance(r, g) >= cfg.inflation());
    }
    goals.clear();
    goals.push_back(g);
  }
}

TEST_CASE("goal audit: 10k samples never inside an inflated obstacle") {
  const ScenarioConfig cfg = small_cfg();
  const Scenario s = generate_scenario(cfg, 5);
  Rng rng(1234);
  std::vector<Vec2> no_others;
  for (int i = 0; i < 10000; ++i) {
    const Vec2 g = assign_goal(cfg, s, rng, {10.0, 10.0}, no_others);
    for (const RectObstacle& r : s.obstacles) {
      CHECK(rect_distance(r, g) >= cfg.inflation());
    }
  }
}

TEST_CASE("run_episode: bookkeeping and world-bounds invariants") {
  const ScenarioConfig cfg = small_cfg();
  const Scenario s = generate_scenario(cfg, derive_seed(cfg.rng_seed, 0,
                                                        RngStream::scenario));
  const EpisodeLog log = run_episode(
      cfg, s, Policy::topo_guided, 0,
      derive_seed(cfg.rng_seed, 0, RngStream::starts),
      derive_seed(cfg.rng_seed, 0, RngStream::goals));

  CHECK(log.records.size() ==
        static_cast<std::size_t>(cfg.frames_per_episode) * cfg.n_agents);
  for (const FrameRecord& r : log.records) {
    CHECK(r.position.x >= 0.0);
    CHECK(r.position.x <= cfg.world_w);
    CHECK(r.position.y >= 0.0);
    CHECK(r.position.y <= cfg.world_h);
    CHECK(norm(r.velocity) <= cfg.max_speed + 1e-9);
  }
  // Path indices are non-decreasing per agent.
  for (int a = 0; a < cfg.n_agents; ++a) {
    int prev = 0;
    for (int f = 0; f < cfg.frames_per_episode; ++f) {
      CHECK(log.record(f, a).path_index >= prev);
      prev = log.record(f, a).path_index;
    }
  }
}

TEST_CASE("paired policies share obstacles and starts") {
  const ScenarioConfig cfg = small_cfg();
  const Scenario s = generate_scenario(cfg, derive_seed(cfg.rng_seed, 1,
                                                        RngStream::scenario));
  const auto starts_seed = derive_seed(cfg.rng_seed, 1, RngStream::starts);
  const auto goals_seed = derive_seed(cfg.rng_seed, 1, RngStream::goals);
  const EpisodeLog orca =
      run_episode(cfg, s, Policy::plain_orca, 1, starts_seed, goals_seed);
  const EpisodeLog topo =
      run_episode(cfg, s, Policy::topo_guided, 1, starts_seed, goals_seed);

  REQUIRE(orca.starts.size() == topo.starts.size());
  for (std::size_t a = 0; a < orca.starts.size(); ++a) {
    CHECK(orca.starts[a].x == topo.starts[a].x);
    CHECK(orca.starts[a].y == topo.starts[a].y);
  }
  // Initial goals drawn from the same stream with identical state.
  for (int a = 0; a < cfg.n_agents; ++a) {
    CHECK(orca.goals[a].pos.x == topo.goals[a].pos.x);
    CHECK(orca.goals[a].pos.y == topo.goals[a].pos.y);
  }
}

TEST_CASE("reduction: no obstacles -> frame-identical trajectories") {
  ScenarioConfig cfg = small_cfg();
  cfg.n_obstacles = 0;
  cfg.frames_per_episode = 120;
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    cfg.rng_seed = seed;
    const Scenario s = generate_scenario(
        cfg, derive_seed(cfg.rng_seed, 0, RngStream::scenario));
    const auto starts_seed = derive_seed(cfg.rng_seed, 0, RngStream::starts);
    const auto goals_seed = derive_seed(cfg.rng_seed, 0, RngStream::goals);
    const EpisodeLog orca =
        run_episode(cfg, s, Policy::plain_orca, 0, starts_seed, goals_seed);
    const EpisodeLog topo =
        run_episode(cfg, s, Policy::topo_guided, 0, starts_seed, goals_seed);
    REQUIRE(orca.records.size() == topo.records.size());
    for (std::size_t i = 0; i < orca.records.size(); ++i) {
      CHECK(orca.records[i].position.x == topo.records[i].position.x);
      CHECK(orca.records[i].position.y == topo.records[i].position.y);
      CHECK(orca.records[i].velocity.x == topo.records[i].velocity.x);
      CHECK(orca.records[i].velocity.y == topo.records[i].velocity.y);
    }
  }
}

TEST_CASE("run_benchmark: pairing and determinism") {
  ScenarioConfig cfg = small_cfg();
  cfg.n_episodes = 3;
  cfg.frames_per_episode = 40;

  const BenchmarkResult r1 = run_benchmark(cfg, PolicySelection::both);
  REQUIRE(r1.orca_logs.size() == 3);
  REQUIRE(r1.topo_logs.size() == 3);
  for (std::size_t e = 0; e < 3; ++e) {
    REQUIRE(r1.orca_logs[e].obstacles.size() ==
            r1.topo_logs[e].obstacles.size());
    for (std::size_t i = 0; i < r1.orca_logs[e].obstacles.size(); ++i) {
      CHECK(r1.orca_logs[e].obstacles[i].min_corner.x ==
            r1.topo_logs[e].obstacles[i].min_corner.x);
    }
  }

  const BenchmarkResult r2 = run_benchmark(cfg, PolicySelection::both);
  std::ostringstream s1, s2;
  for (const EpisodeLog& log : r1.orca_logs) write_log(log, s1);
  for (const EpisodeLog& log : r2.orca_logs) write_log(log, s2);
  CHECK(s1.str() == s2.str());

  // Worker count must not change anything.
  cfg.jobs = 2;
  const BenchmarkResult r3 = run_benchmark(cfg, PolicySelection::both);
  std::ostringstream s3;
  for (const EpisodeLog& log : r3.orca_logs) write_log(log, s3);
  CHECK(s1.str() == s3.str());
}

TEST_CASE("topo episodes complete goals without penetrations, 50 seeds") {
  ScenarioConfig cfg;
  cfg.n_agents = 4;
  int episodes_with_reach = 0;
  for (int seed = 0; seed < 50; ++seed) {
    cfg.rng_seed = 3000 + seed;
    const Scenario s = generate_scenario(
        cfg, derive_seed(cfg.rng_seed, 0, RngStream::scenario));
    const EpisodeLog log = run_episode(
        cfg, s, Policy::topo_guided, 0,
        derive_seed(cfg.rng_seed, 0, RngStream::starts),
        derive_seed(cfg.rng_seed, 0, RngStream::goals));
    if (!log.events.empty()) ++episodes_with_reach;

    for (int f = 0; f < log.frames; ++f) {
      for (int i = 0; i < log.n_agents; ++i) {
        for (int j = i + 1; j < log.n_agents; ++j) {
          if (log.fallback[static_cast<std::size_t>(f) * log.n_agents + i] ||
              log.fallback[static_cast<std::size_t>(f) * log.n_agents + j]) {
            continue;
          }
          CHECK(distance(log.record(f, i).position,
                         log.record(f, j).position) >=
                2.0 * cfg.agent_radius - 1e-6);
        }
      }
    }
  }
  // The median seeded run completes at least one path.
  CHECK(episodes_with_reach >= 25);
}

TEST_CASE("log serialization round-trips through parse_log") {
  ScenarioConfig cfg = small_cfg();
  cfg.n_episodes = 1;
  cfg.frames_per_episode = 50;
  const BenchmarkResult r = run_benchmark(cfg, PolicySelection::both);
  REQUIRE(r.topo_logs.size() == 1);

  std::ostringstream oss;
  write_log(r.topo_logs[0], oss);
  std::istringstream iss(oss.str());
  const EpisodeLog parsed = parse_log(iss, "roundtrip");

  const EpisodeLog expect = quantized(r.topo_logs[0]);
  CHECK(parsed.episode == expect.episode);
  CHECK(parsed.policy == expect.policy);
  CHECK(parsed.n_agents == expect.n_agents);
  CHECK(parsed.frames == expect.frames);
  REQUIRE(parsed.records.size() == expect.records.size());
  for (std::size_t i = 0; i < parsed.records.size(); ++i) {
    CHECK(parsed.records[i].position.x == expect.records[i].position.x);
    CHECK(parsed.records[i].position.y == expect.records[i].position.y);
    CHECK(parsed.records[i].velocity.x == expect.records[i].velocity.x);
    CHECK(parsed.records[i].goal_id == expect.records[i].goal_id);
    CHECK(parsed.records[i].path_index == expect.records[i].path_index);
  }
  REQUIRE(parsed.events.size() == expect.events.size());
  for (std::size_t i = 0; i < parsed.events.size(); ++i) {
    CHECK(parsed.events[i].agent == expect.events[i].agent);
    CHECK(parsed.events[i].frame == expect.events[i].frame);
  }
  REQUIRE(parsed.goals.size() == expect.goals.size());
  for (std::size_t i = 0; i < parsed.goals.size(); ++i) {
    CHECK(parsed.goals[i].pos.x == expect.goals[i].pos.x);
    CHECK(parsed.goals[i].frame == expect.goals[i].frame);
  }
  // Re-serializing the parsed log reproduces the bytes.
  std::ostringstream oss2;
  write_log(parsed, oss2);
  CHECK(oss2.str() == oss.str());
}
