#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "esncache/sim/config.hpp"
#include "esncache/sim/oracle.hpp"
#include "esncache/sim/world.hpp"

namespace esncache {

enum class Policy {
  Proposed,           // ESN predictions, clustering, sampled cloud popularity
  RandomClustered,    // random caches, clustered interference management
  RandomUnclustered,  // random caches, every other RRH interferes
  Oracle,             // exhaustive search on ground truth
};

std::string_view policy_name(Policy policy);
// Accepts the names returned by policy_name; throws ConfigError otherwise.
Policy parse_policy(std::string_view name);

struct SlotMetrics {
  std::size_t slot = 0;  // k, counted from the end of warmup
  double sum_capacity = 0.0;  // E_k, capacity units per second
  double hit_rrh = 0.0;       // share of requests served from the serving RRH
  double hit_cloud = 0.0;
  double hit_remote = 0.0;
  double miss = 0.0;          // share fetched from the content server
  std::size_t backhaul_load = 0;   // N_B
  std::size_t fronthaul_load = 0;  // N_F
  std::size_t infeasible = 0;      // requests whose path missed the delay bound
  double planned = 0.0;            // expected objective on ground truth
};

struct PredictionQuality {
  double serving_accuracy = 0.0;  // predicted serving RRH equals the true one
  double position_error_m = 0.0;  // mean distance, predicted to true position
  double content_tv = 0.0;        // mean total-variation error of demand
};

struct EpisodeReport {
  Policy policy = Policy::Proposed;
  std::uint64_t seed = 0;
  double mean_capacity = 0.0;  // E-bar over the evaluated slots
  double mean_planned = 0.0;   // time average of SlotMetrics::planned
  std::size_t infeasible = 0;
  std::vector<SlotMetrics> slots;
  std::vector<std::vector<std::size_t>> cloud_trace;  // cloud cache per period
  PredictionQuality prediction;
};

struct EpisodeOptions {
  OracleScope oracle_scope = OracleScope::Hierarchical;
  ExternalTraces traces;
};

// Runs every policy over one shared world: the same users, positions,
// requests and fading. Reports come back in the order of `policies`.
std::vector<EpisodeReport> run_episodes(const SimConfig& cfg, std::span<const Policy> policies,
                                        std::uint64_t seed, const EpisodeOptions& options = {});

EpisodeReport run_episode(const SimConfig& cfg, Policy policy, std::uint64_t seed,
                          const EpisodeOptions& options = {});

}  // namespace esncache
