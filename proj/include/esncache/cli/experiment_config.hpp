#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "esncache/sim/config.hpp"
#include "esncache/sim/episode.hpp"

namespace esncache {

// Simulation parameters plus run orchestration settings.
struct ExperimentConfig {
  SimConfig sim;
  std::uint64_t seed = 1;
  std::vector<Policy> policies = {Policy::Proposed, Policy::RandomClustered, Policy::RandomUnclustered};
  std::string sweep_axis = "C_c";
  std::vector<std::string> sweep_values = {"1", "2", "4", "6"};
  std::size_t repetitions = 20;
  std::size_t coverage_trials = 1000;

  void validate() const;
};

// Keys in canonical order.
std::vector<std::string_view> config_keys();

// Sets one key from its text form. Throws ConfigError naming the key.
void set_config_value(ExperimentConfig& cfg, std::string_view key, std::string_view value);
std::string get_config_value(const ExperimentConfig& cfg, std::string_view key);

// `key = value` lines; `#` starts a comment. Unknown and repeated keys are
// rejected. The result is validated.
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::filesystem::path& path);

// Applies `KEY=VAL` overrides in order, then validates.
void apply_overrides(ExperimentConfig& cfg, const std::vector<std::string>& overrides);

// Every key in canonical order; parse_config(serialize_config(c)) == c.
std::string serialize_config(const ExperimentConfig& cfg);

}  // namespace esncache
