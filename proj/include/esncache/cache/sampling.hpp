#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <cstdint>
#include <span>

namespace esncache {

// ceil(-ln(delta) / (2 epsilon^2)).
std::size_t hoeffding_sample_size(double epsilon, double delta);

struct SamplingPlan {
  double epsilon;
  double delta;
  std::size_t sample_size;  // N_n

  static SamplingPlan make(double epsilon, double delta);
};

// One updated demand vector p' of one user in one slot, with its weight
// (the user's effective capacity).
struct DemandRecord {
  std::size_t stratum;  // slot index
  Eigen::VectorXd demand;
  double weight;
};

struct PopularityEstimate {
  Eigen::VectorXd popularity;  // weighted mean of the sampled records
  std::size_t sampled;
  bool full_scan;
};

// Samples N_n records without replacement, stratified by slot with
// proportional quotas, and returns the weighted mean demand. Streams no
// longer than N_n are scanned in full.
PopularityEstimate estimate_popularity(std::span<const DemandRecord> stream, const SamplingPlan& plan,
                                       std::uint64_t seed);

struct CoverageResult {
  std::size_t trials = 0;
  std::size_t failures = 0;  // sup-norm error above epsilon
  double failure_rate = 0.0;
  double mean_error = 0.0;   // mean sup-norm error
};

// Repeats the sampled estimate with independent seeds and compares each
// against the full-scan popularity of the stream.
CoverageResult sampling_coverage(std::span<const DemandRecord> stream, const SamplingPlan& plan,
                                 std::size_t trials, std::uint64_t seed);

// Total-variation distance.
double distribution_distance(const Eigen::VectorXd& p, const Eigen::VectorXd& q);
// Estimate from N_n coordinates drawn uniformly with replacement, scaled to
// the full support.
double distribution_distance(const Eigen::VectorXd& p, const Eigen::VectorXd& q, const SamplingPlan& plan,
                             std::uint64_t seed);

}  // namespace esncache
