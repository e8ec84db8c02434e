#include "esncache/cli/experiment_config.hpp"

#include <algorithm>
#include <charconv>
#include <fmt/format.h>
#include <fstream>
#include <functional>
#include <istream>
#include <set>
#include <sstream>

#include "esncache/core/error.hpp"

namespace esncache {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> out;
  while (true) {
    const auto comma = s.find(',');
    const auto item = trim(s.substr(0, comma));
    if (!item.empty()) out.push_back(item);
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

[[noreturn]] void bad_value(std::string_view key, std::string_view expected, std::string_view value) {
  throw ConfigError(fmt::format("key '{}': expected {}, got '{}'", key, expected, value));
}

template <class T>
T parse_number(std::string_view key, std::string_view value, std::string_view expected) {
  T out{};
  const char* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (value.empty() || ec != std::errc() || ptr != end) bad_value(key, expected, value);
  return out;
}

bool parse_bool(std::string_view key, std::string_view value) {
  if (value == "true") return true;
  if (value == "false") return false;
  bad_value(key, "true or false", value);
}

struct Field {
  std::string_view key;
  std::function<void(ExperimentConfig&, std::string_view)> set;
  std::function<std::string(const ExperimentConfig&)> get;
};

using RealRef = double& (*)(ExperimentConfig&);
using CountRef = std::size_t& (*)(ExperimentConfig&);
using FlagRef = bool& (*)(ExperimentConfig&);

ExperimentConfig& mut(const ExperimentConfig& c) { return const_cast<ExperimentConfig&>(c); }

Field real(std::string_view key, RealRef ref) {
  return {key, [key, ref](ExperimentConfig& c, std::string_view v) { ref(c) = parse_number<double>(key, v, "a number"); },
          [ref](const ExperimentConfig& c) { return fmt::format("{}", ref(mut(c))); }};
}

Field count(std::string_view key, CountRef ref) {
  return {key,
          [key, ref](ExperimentConfig& c, std::string_view v) {
            ref(c) = parse_number<std::size_t>(key, v, "a non-negative integer");
          },
          [ref](const ExperimentConfig& c) { return fmt::format("{}", ref(mut(c))); }};
}

Field flag(std::string_view key, FlagRef ref) {
  return {key, [key, ref](ExperimentConfig& c, std::string_view v) { ref(c) = parse_bool(key, v); },
          [ref](const ExperimentConfig& c) { return std::string(ref(mut(c)) ? "true" : "false"); }};
}

std::string_view law_name(WeightDistribution::Kind kind) {
  switch (kind) {
    case WeightDistribution::Kind::PointMass:
      return "point";
    case WeightDistribution::Kind::SymmetricBinary:
      return "binary";
    case WeightDistribution::Kind::Uniform:
      return "uniform";
  }
  return "point";
}

const std::vector<Field>& fields() {
  static const std::vector<Field> table = {
      real("r", [](ExperimentConfig& c) -> double& { return c.sim.radio.cell_radius_m; }),
      count("R", [](ExperimentConfig& c) -> std::size_t& { return c.sim.rrhs; }),
      real("B", [](ExperimentConfig& c) -> double& { return c.sim.radio.bandwidth_hz; }),
      real("L", [](ExperimentConfig& c) -> double& { return c.sim.wired.content_bits; }),
      real("theta_O", [](ExperimentConfig& c) -> double& { return c.sim.theta_O; }),
      count("N_w", [](ExperimentConfig& c) -> std::size_t& { return c.sim.reservoir_units; }),
      count("C_c", [](ExperimentConfig& c) -> std::size_t& { return c.sim.cloud_capacity; }),
      count("C_r", [](ExperimentConfig& c) -> std::size_t& { return c.sim.rrh_capacity; }),
      count("K", [](ExperimentConfig& c) -> std::size_t& { return c.sim.context_dim; }),
      real("delta", [](ExperimentConfig& c) -> double& { return c.sim.delta; }),
      real("epsilon", [](ExperimentConfig& c) -> double& { return c.sim.epsilon; }),
      count("H", [](ExperimentConfig& c) -> std::size_t& { return c.sim.mobility_period; }),
      count("T_tau", [](ExperimentConfig& c) -> std::size_t& { return c.sim.cloud_period; }),
      real("P", [](ExperimentConfig& c) -> double& { return c.sim.radio.tx_power_dbm; }),
      real("beta", [](ExperimentConfig& c) -> double& { return c.sim.radio.pathloss_exponent; }),
      real("lambda_alpha", [](ExperimentConfig& c) -> double& { return c.sim.learning_rate; }),
      count("T", [](ExperimentConfig& c) -> std::size_t& { return c.sim.slots; }),
      real("sigma2", [](ExperimentConfig& c) -> double& { return c.sim.radio.noise_power_dbm; }),
      real("D_max", [](ExperimentConfig& c) -> double& { return c.sim.wired.delay_bound_s; }),
      count("N_s", [](ExperimentConfig& c) -> std::size_t& { return c.sim.horizon; }),
      real("lambda", [](ExperimentConfig& c) -> double& { return c.sim.ridge_lambda; }),
      real("chi", [](ExperimentConfig& c) -> double& { return c.sim.chi; }),
      count("U", [](ExperimentConfig& c) -> std::size_t& { return c.sim.users; }),
      count("N", [](ExperimentConfig& c) -> std::size_t& { return c.sim.catalog_size; }),
      count("W", [](ExperimentConfig& c) -> std::size_t& { return c.sim.cycle_units; }),
      real("v_B", [](ExperimentConfig& c) -> double& { return c.sim.wired.backhaul_rate_bps; }),
      real("v_F", [](ExperimentConfig& c) -> double& { return c.sim.wired.fronthaul_rate_bps; }),
      real("capacity_unit", [](ExperimentConfig& c) -> double& { return c.sim.capacity_unit_bits; }),
      count("substeps", [](ExperimentConfig& c) -> std::size_t& { return c.sim.substeps; }),
      count("n_mc", [](ExperimentConfig& c) -> std::size_t& { return c.sim.n_mc; }),
      real("min_distance", [](ExperimentConfig& c) -> double& { return c.sim.min_distance_m; }),
      count("warmup_slots", [](ExperimentConfig& c) -> std::size_t& { return c.sim.warmup_slots; }),
      count("slots_per_day", [](ExperimentConfig& c) -> std::size_t& { return c.sim.slots_per_day; }),
      real("spectral_radius", [](ExperimentConfig& c) -> double& { return c.sim.spectral_radius; }),
      real("reservoir_density", [](ExperimentConfig& c) -> double& { return c.sim.reservoir_density; }),
      real("input_scaling", [](ExperimentConfig& c) -> double& { return c.sim.input_scaling; }),
      Field{"cycle_law",
            [](ExperimentConfig& c, std::string_view v) {
              if (v == "point")
                c.sim.cycle_kind = WeightDistribution::Kind::PointMass;
              else if (v == "binary")
                c.sim.cycle_kind = WeightDistribution::Kind::SymmetricBinary;
              else if (v == "uniform")
                c.sim.cycle_kind = WeightDistribution::Kind::Uniform;
              else
                bad_value("cycle_law", "point, binary or uniform", v);
            },
            [](const ExperimentConfig& c) { return std::string(law_name(c.sim.cycle_kind)); }},
      real("cycle_lo", [](ExperimentConfig& c) -> double& { return c.sim.cycle_lo; }),
      real("cycle_hi", [](ExperimentConfig& c) -> double& { return c.sim.cycle_hi; }),
      count("N_tr", [](ExperimentConfig& c) -> std::size_t& { return c.sim.training_window; }),
      real("grid_pitch", [](ExperimentConfig& c) -> double& { return c.sim.grid_pitch_m; }),
      real("zipf_alpha", [](ExperimentConfig& c) -> double& { return c.sim.zipf_alpha; }),
      count("archetypes", [](ExperimentConfig& c) -> std::size_t& { return c.sim.archetypes; }),
      real("archetype_spread", [](ExperimentConfig& c) -> double& { return c.sim.archetype_spread; }),
      real("bucket_spread", [](ExperimentConfig& c) -> double& { return c.sim.bucket_spread; }),
      count("waypoints", [](ExperimentConfig& c) -> std::size_t& { return c.sim.waypoints; }),
      real("speed", [](ExperimentConfig& c) -> double& { return c.sim.speed_m_per_slot; }),
      real("waypoint_spread", [](ExperimentConfig& c) -> double& { return c.sim.waypoint_spread_m; }),
      flag("oracle_predictions", [](ExperimentConfig& c) -> bool& { return c.sim.oracle_predictions; }),
      real("oracle_limit", [](ExperimentConfig& c) -> double& { return c.sim.oracle_limit; }),
      Field{"seed",
            [](ExperimentConfig& c, std::string_view v) {
              c.seed = parse_number<std::uint64_t>("seed", v, "a non-negative integer");
            },
            [](const ExperimentConfig& c) { return fmt::format("{}", c.seed); }},
      Field{"policies",
            [](ExperimentConfig& c, std::string_view v) {
              c.policies.clear();
              for (auto item : split_list(v)) c.policies.push_back(parse_policy(item));
            },
            [](const ExperimentConfig& c) {
              std::string out;
              for (Policy p : c.policies) out += (out.empty() ? "" : ",") + std::string(policy_name(p));
              return out;
            }},
      Field{"sweep_axis", [](ExperimentConfig& c, std::string_view v) { c.sweep_axis = std::string(v); },
            [](const ExperimentConfig& c) { return c.sweep_axis; }},
      Field{"sweep_values",
            [](ExperimentConfig& c, std::string_view v) {
              c.sweep_values.clear();
              for (auto item : split_list(v)) c.sweep_values.emplace_back(item);
            },
            [](const ExperimentConfig& c) {
              std::string out;
              for (const auto& s : c.sweep_values) out += (out.empty() ? "" : ",") + s;
              return out;
            }},
      count("repetitions", [](ExperimentConfig& c) -> std::size_t& { return c.repetitions; }),
      count("coverage_trials", [](ExperimentConfig& c) -> std::size_t& { return c.coverage_trials; }),
  };
  return table;
}

const Field& field(std::string_view key) {
  for (const auto& f : fields())
    if (f.key == key) return f;
  throw ConfigError(fmt::format("unknown key '{}'", key));
}

constexpr std::string_view kSweepAxes[] = {"C_c", "R", "U", "epsilon", "delta", "W", "N_tr"};

}  // namespace

void ExperimentConfig::validate() const {
  sim.validate();
  if (policies.empty()) throw ConfigError("policies must name at least one policy");
  if (std::find(std::begin(kSweepAxes), std::end(kSweepAxes), sweep_axis) == std::end(kSweepAxes))
    throw ConfigError(fmt::format("key 'sweep_axis': unsupported axis '{}'", sweep_axis));
  if (sweep_values.empty()) throw ConfigError("sweep_values must not be empty");
  if (repetitions == 0) throw ConfigError("repetitions must be positive");
  if (coverage_trials == 0) throw ConfigError("coverage_trials must be positive");
}

std::vector<std::string_view> config_keys() {
  std::vector<std::string_view> out;
  for (const auto& f : fields()) out.push_back(f.key);
  return out;
}

void set_config_value(ExperimentConfig& cfg, std::string_view key, std::string_view value) {
  field(key).set(cfg, trim(value));
}

std::string get_config_value(const ExperimentConfig& cfg, std::string_view key) { return field(key).get(cfg); }

ExperimentConfig parse_config(std::istream& in) {
  ExperimentConfig cfg;
  std::set<std::string, std::less<>> seen;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(fmt::format("line {}: expected 'key = value'", line_no));
    const auto key = trim(line.substr(0, eq));
    if (!seen.emplace(key).second) throw ConfigError(fmt::format("line {}: key '{}' repeated", line_no, key));
    try {
      set_config_value(cfg, key, line.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError(fmt::format("line {}: {}", line_no, e.what()));
    }
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open config file '{}'", path.string()));
  return parse_config(in);
}

void apply_overrides(ExperimentConfig& cfg, const std::vector<std::string>& overrides) {
  for (const auto& o : overrides) {
    const auto eq = o.find('=');
    if (eq == std::string::npos) throw ConfigError(fmt::format("override '{}' is not KEY=VAL", o));
    set_config_value(cfg, trim(std::string_view(o).substr(0, eq)), std::string_view(o).substr(eq + 1));
  }
  cfg.validate();
}

std::string serialize_config(const ExperimentConfig& cfg) {
  std::string out;
  for (const auto& f : fields()) out += fmt::format("{} = {}\n", f.key, f.get(cfg));
  return out;
}

}  // namespace esncache
