#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <span>
#include <vector>

namespace esncache {

// Ground truth of one slot as seen by the full-information planner.
struct OracleSlot {
  std::vector<std::size_t> serving;     // true serving RRH per user
  std::vector<Eigen::VectorXd> demand;  // true request distribution per user
  std::vector<double> a;                // effective capacity, RRH-cache path
  std::vector<double> c;                // effective capacity, cloud-cache path
};

enum class OracleScope {
  // RRH caches maximize their own users' term, then the cloud maximizes
  // the remaining term given them.
  Hierarchical,
  // RRH and cloud caches maximize the summed objective together.
  Joint,
};

struct OracleDecision {
  std::vector<std::size_t> cloud;
  std::vector<std::vector<std::vector<std::size_t>>> rrh;  // [slot][rrh]
  double objective = 0.0;
};

// Size of the exhaustive search: C(N, C_c) * C(N, C_r)^R.
double oracle_search_size(std::size_t catalog, std::size_t cloud_capacity, std::size_t rrh_capacity,
                          std::size_t rrhs);

// Enumerates every k-subset and returns the best one by summed score. A
// later subset wins only if it is better by more than 1e-12 relative, so the
// lexicographically first optimum is returned.
std::vector<std::size_t> best_subset(std::span<const double> scores, std::size_t k);

// Expected objective of one slot for a given cloud cache and RRH caches.
double planned_objective(const OracleSlot& slot, std::span<const std::size_t> cloud,
                         const std::vector<std::vector<std::size_t>>& rrh_caches);

// Exhaustive full-information caching for one cloud period. RRHs without
// users get empty caches. Throws InstanceTooLargeError when the search size
// exceeds `limit`.
OracleDecision solve_oracle(std::span<const OracleSlot> period, std::size_t rrhs, std::size_t catalog,
                            std::size_t cloud_capacity, std::size_t rrh_capacity, OracleScope scope,
                            double limit);

}  // namespace esncache
