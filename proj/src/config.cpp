// SPDX-License-Identifier: Apache-2.0

#include "topo_orca/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace topo_orca {

std::string policy_name(Policy p) {
  return p == Policy::plain_orca ? "orca" : "topo";
}

void ScenarioConfig::validate() const {
  const auto fail = [](const std::string& what) {
    throw std::invalid_argument("config: " + what);
  };
  if (world_w <= 0.0 || world_h <= 0.0) fail("world_w/world_h must be > 0");
  if (cell_size <= 0.0) fail("cell_size must be > 0");
  if (cell_size > std::min(world_w, world_h)) {
    fail("cell_size exceeds the smaller world dimension");
  }
  if (n_agents < 1) fail("n_agents must be >= 1");
  if (n_obstacles < 0) fail("n_obstacles must be >= 0");
  if (obstacle_min_size <= 0.0 || obstacle_max_size < obstacle_min_size) {
    fail("obstacle size range must satisfy 0 < min <= max");
  }
  if (agent_radius <= 0.0) fail("agent_radius must be > 0");
  if (max_speed <= 0.0) fail("max_speed must be > 0");
  if (neighbor_dist <= 0.0) fail("neighbor_dist must be > 0");
  if (time_horizon <= 0.0 || time_horizon_obst <= 0.0) {
    fail("time horizons must be > 0");
  }
  if (frames_per_episode < 1) fail("frames_per_episode must be >= 1");
  if (n_episodes < 1) fail("n_episodes must be >= 1");
  if (min_traversable <= 0.0 || min_traversable > 1.0) {
    fail("min_traversable must be in (0, 1]");
  }
  if (goal_min_dist_frac < 0.0 || goal_min_dist_frac >= 1.0) {
    fail("goal_min_dist_frac must be in [0, 1)");
  }
  if (theta <= 0.0 || theta >= 1.0) fail("theta must be in (0, 1)");
  if (jobs < 1) fail("jobs must be >= 1");
}

namespace {

struct Field {
  std::function<void(ScenarioConfig&, const std::string&)> set;
  std::function<std::string(const ScenarioConfig&)> get;
};

template <typename T>
std::string to_text(T v) {
  std::ostringstream oss;
  oss.precision(17);
  oss << v;
  return oss.str();
}

double parse_double(const std::string& s) {
  std::size_t pos = 0;
  const double v = std::stod(s, &pos);
  if (pos != s.size()) throw std::invalid_argument("trailing characters");
  return v;
}

int parse_int(const std::string& s) {
  std::size_t pos = 0;
  const long v = std::stol(s, &pos);
  if (pos != s.size()) throw std::invalid_argument("trailing characters");
  return static_cast<int>(v);
}

std::uint64_t parse_u64(const std::string& s) {
  std::size_t pos = 0;
  const unsigned long long v = std::stoull(s, &pos);
  if (pos != s.size()) throw std::invalid_argument("trailing characters");
  return static_cast<std::uint64_t>(v);
}

const std::vector<std::pair<std::string, Field>>& fields() {
  static const std::vector<std::pair<std::string, Field>> kFields = {
#define DOUBLE_FIELD(name)                                              \
  {#name,                                                               \
   {[](ScenarioConfig& c, const std::string& v) { c.name = parse_double(v); }, \
    [](const ScenarioConfig& c) { return to_text(c.name); }}}
#define INT_FIELD(name)                                                 \
  {#name,                                                               \
   {[](ScenarioConfig& c, const std::string& v) { c.name = parse_int(v); }, \
    [](const ScenarioConfig& c) { return to_text(c.name); }}}
      DOUBLE_FIELD(world_w),
      DOUBLE_FIELD(world_h),
      DOUBLE_FIELD(cell_size),
      INT_FIELD(n_agents),
      INT_FIELD(n_obstacles),
      DOUBLE_FIELD(obstacle_min_size),
      DOUBLE_FIELD(obstacle_max_size),
      DOUBLE_FIELD(agent_radius),
      DOUBLE_FIELD(max_speed),
      DOUBLE_FIELD(neighbor_dist),
      DOUBLE_FIELD(time_horizon),
      DOUBLE_FIELD(time_horizon_obst),
      INT_FIELD(frames_per_episode),
      INT_FIELD(n_episodes),
      DOUBLE_FIELD(min_traversable),
      {"rng_seed",
       {[](ScenarioConfig& c, const std::string& v) { c.rng_seed = parse_u64(v); },
        [](const ScenarioConfig& c) { return to_text(c.rng_seed); }}},
      DOUBLE_FIELD(goal_min_dist_frac),
      DOUBLE_FIELD(theta),
      INT_FIELD(jobs),
#undef DOUBLE_FIELD
#undef INT_FIELD
  };
  return kFields;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

ScenarioConfig parse_config_stream(std::istream& in,
                                   const ScenarioConfig& base,
                                   const std::string& origin) {
  ScenarioConfig cfg = base;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument(origin + ":" + std::to_string(line_no) +
                                  ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));

    bool known = false;
    for (const auto& [name, field] : fields()) {
      if (name == key) {
        known = true;
        try {
          field.set(cfg, value);
        } catch (const std::exception&) {
          throw std::invalid_argument(origin + ":" + std::to_string(line_no) +
                                      ": unparsable value for key '" + key +
                                      "': '" + value + "'");
        }
        break;
      }
    }
    if (!known) {
      throw std::invalid_argument(origin + ":" + std::to_string(line_no) +
                                  ": unknown key '" + key + "'");
    }
  }
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(origin + ": " + e.what());
  }
  return cfg;
}

ScenarioConfig parse_config_file(const std::string& path,
                                 const ScenarioConfig& base) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("config: cannot open '" + path + "'");
  }
  return parse_config_stream(in, base, path);
}

void write_config(const ScenarioConfig& cfg, std::ostream& out) {
  for (const auto& [name, field] : fields()) {
    out << name << " = " << field.get(cfg) << "\n";
  }
}

}  // namespace topo_orca
