#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "esncache/cli/experiment_config.hpp"
#include "esncache/sim/episode.hpp"

namespace esncache {

// Policies named by a --policy argument: "all", one name, or a comma list.
// "all" drops the oracle when its search would exceed oracle_limit.
std::vector<Policy> resolve_policies(const std::string& arg, const SimConfig& cfg);

struct SimulateOptions {
  std::string policy = "all";
  std::optional<std::filesystem::path> mobility_trace;
  std::optional<std::filesystem::path> content_trace;
};

// Writes <policy>_slots.csv, <policy>_summary.json and
// <policy>_cloud_cache.csv per policy, plus the resolved config.
std::vector<EpisodeReport> cmd_simulate(const ExperimentConfig& cfg, const SimulateOptions& options,
                                        const std::filesystem::path& out_dir);

// One long-format result row.
struct SweepRow {
  std::string axis;
  std::string axis_value;
  std::string policy;
  std::uint64_t seed = 0;
  std::string metric;
  double value = 0.0;
};

// Seeds cfg.seed, cfg.seed + 1, ... per point. Points run concurrently and
// rows come back in canonical order: axis value, seed, policy, metric.
std::vector<SweepRow> run_sweep(const ExperimentConfig& cfg);
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);
// Writes sweep_<axis>.csv.
std::vector<SweepRow> cmd_sweep(const ExperimentConfig& cfg, const std::filesystem::path& out_dir);

struct MemcapOptions {
  std::string dist = "point";  // point, binary or uniform
  double a = 0.9;
  double lo = -0.9;
  double hi = 0.9;
  std::size_t w_min = 1;
  std::size_t w_max = 20;
  std::size_t empirical_len = 0;  // 0 skips the empirical column
  std::uint64_t seed = 1;
};

// CSV `W,analytic,bound_lo,bound_hi,empirical`.
void cmd_memcap(const MemcapOptions& options, std::ostream& out);

std::size_t cmd_sample_size(double epsilon, double delta, std::ostream& out);

// Writes content_trace.csv and mobility_trace.csv covering warmup and
// evaluation slots.
void cmd_gen_data(const ExperimentConfig& cfg, const std::filesystem::path& out_dir);

}  // namespace esncache
