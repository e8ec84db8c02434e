#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstddef>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "esncache/esn/distribution.hpp"

namespace esncache {

struct ContentTraceRecord;

// Maps a slot index to hour-of-day and weekday.
struct SlotClock {
  std::size_t slots_per_day = 90;

  std::size_t hour(std::size_t slot) const;
  std::size_t weekday(std::size_t slot) const;
  // Four six-hour day parts times weekday/weekend.
  std::size_t bucket(std::size_t slot) const;

  static constexpr std::size_t kBuckets = 8;
};

struct WorkloadParams {
  std::size_t users = 64;
  std::size_t catalog_size = 50;
  double zipf_alpha = 0.8;
  std::size_t archetypes = 4;
  double archetype_spread = 0.3;  // log-rank noise per archetype
  double bucket_spread = 0.2;     // extra log-rank noise per time bucket
  std::size_t slots_per_day = 90;

  void validate() const;
};

struct UserProfile {
  std::size_t archetype = 0;
  std::size_t gender = 0;      // 0 or 1
  std::size_t occupation = 0;  // 0..7
  double age = 30.0;           // years
  std::size_t device = 0;      // 0..3
};

// Ground-truth demand and context for every (user, slot), plus optional
// recorded requests when built from a trace.
class Workload {
 public:
  static constexpr std::size_t kOccupations = 8;
  static constexpr std::size_t kDevices = 4;

  Workload(std::vector<UserProfile> users, std::vector<std::array<std::size_t, SlotClock::kBuckets>> table,
           std::vector<Eigen::VectorXd> distributions, SlotClock clock);

  // Empirical per-user, per-bucket request frequencies from a content trace;
  // recorded rows override sampled requests and contexts.
  static Workload from_trace(const std::vector<ContentTraceRecord>& records, std::size_t users,
                             std::size_t catalog_size, std::size_t slots_per_day);

  std::size_t user_count() const { return users_.size(); }
  std::size_t catalog_size() const;
  const SlotClock& clock() const { return clock_; }
  const std::vector<UserProfile>& users() const { return users_; }

  ContextVector context(std::size_t user, std::size_t slot) const;
  const Eigen::VectorXd& distribution(std::size_t user, std::size_t slot) const;
  // Request of `user` in `slot`, drawn from the ground truth with a stream
  // seeded by (seed, user, slot) unless a recorded request exists.
  std::size_t request(std::size_t user, std::size_t slot, std::uint64_t seed) const;

  // Trace rows for slots [0, slots).
  std::vector<ContentTraceRecord> request_stream(std::size_t slots, std::uint64_t seed) const;

  // Average demand over users and over one week of slots.
  Eigen::VectorXd marginal_popularity() const;

 private:
  std::vector<UserProfile> users_;
  std::vector<std::array<std::size_t, SlotClock::kBuckets>> table_;
  std::vector<Eigen::VectorXd> distributions_;
  SlotClock clock_;
  struct Recorded {
    std::array<double, 7> context;
    std::size_t content;  // 0-based
  };
  // Rows from a trace keyed by (user << 32) | slot.
  std::unordered_map<std::uint64_t, Recorded> recorded_;
};

Workload generate_workload(const WorkloadParams& params, std::uint64_t seed);

}  // namespace esncache
