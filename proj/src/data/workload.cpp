#include "esncache/data/workload.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "esncache/core/error.hpp"
#include "esncache/core/rng.hpp"
#include "esncache/data/traces.hpp"

namespace esncache {

namespace {

std::uint64_t key(std::size_t user, std::size_t slot) {
  return (static_cast<std::uint64_t>(user) << 32) | static_cast<std::uint64_t>(slot);
}

// Zipf weights over ranks induced by sorting noisy log-rank scores.
Eigen::VectorXd reranked_zipf(const std::vector<double>& scores, double alpha) {
  const std::size_t n = scores.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
  Eigen::VectorXd p(static_cast<Eigen::Index>(n));
  for (std::size_t rank = 0; rank < n; ++rank)
    p(static_cast<Eigen::Index>(order[rank])) = std::pow(static_cast<double>(rank + 1), -alpha);
  return p / p.sum();
}

std::size_t sample_index(const Eigen::VectorXd& p, double u) {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    acc += p(i);
    if (u < acc) return static_cast<std::size_t>(i);
  }
  // Round-off: fall back to the last content with positive mass.
  for (Eigen::Index i = p.size() - 1; i >= 0; --i)
    if (p(i) > 0.0) return static_cast<std::size_t>(i);
  return 0;
}

}  // namespace

std::size_t SlotClock::hour(std::size_t slot) const { return (slot % slots_per_day) * 24 / slots_per_day; }

std::size_t SlotClock::weekday(std::size_t slot) const { return (slot / slots_per_day) % 7; }

std::size_t SlotClock::bucket(std::size_t slot) const {
  return hour(slot) / 6 + (weekday(slot) >= 5 ? 4 : 0);
}

void WorkloadParams::validate() const {
  if (users == 0) throw ConfigError("U must be positive");
  if (catalog_size < 2) throw ConfigError("N must be at least 2");
  if (!(zipf_alpha >= 0.0)) throw ConfigError("zipf_alpha must be non-negative");
  if (archetypes == 0) throw ConfigError("archetypes must be positive");
  if (!(archetype_spread >= 0.0) || !(bucket_spread >= 0.0)) throw ConfigError("rerank spreads must be >= 0");
  if (slots_per_day == 0) throw ConfigError("slots_per_day must be positive");
}

Workload::Workload(std::vector<UserProfile> users, std::vector<std::array<std::size_t, SlotClock::kBuckets>> table,
                   std::vector<Eigen::VectorXd> distributions, SlotClock clock)
    : users_(std::move(users)), table_(std::move(table)), distributions_(std::move(distributions)), clock_(clock) {
  if (users_.size() != table_.size()) throw ConfigError("one distribution row per user is required");
  if (distributions_.empty()) throw ConfigError("workload has no distributions");
  for (const auto& row : table_)
    for (std::size_t idx : row)
      if (idx >= distributions_.size()) throw ConfigError("distribution index out of range");
  if (clock_.slots_per_day == 0) throw ConfigError("slots_per_day must be positive");
}

std::size_t Workload::catalog_size() const { return static_cast<std::size_t>(distributions_.front().size()); }

ContextVector Workload::context(std::size_t user, std::size_t slot) const {
  if (auto it = recorded_.find(key(user, slot)); it != recorded_.end())
    return ContextVector(std::span<const double>(it->second.context));
  const UserProfile& u = users_.at(user);
  std::array<double, 7> f{
      static_cast<double>(clock_.hour(slot)) / 23.0,
      static_cast<double>(clock_.weekday(slot)) / 6.0,
      static_cast<double>(u.gender),
      static_cast<double>(u.occupation) / static_cast<double>(kOccupations - 1),
      std::clamp((u.age - 15.0) / 50.0, 0.0, 1.0),
      static_cast<double>(u.device) / static_cast<double>(kDevices - 1),
      0.0,
  };
  return ContextVector(std::span<const double>(f));
}

const Eigen::VectorXd& Workload::distribution(std::size_t user, std::size_t slot) const {
  return distributions_[table_.at(user)[clock_.bucket(slot)]];
}

std::size_t Workload::request(std::size_t user, std::size_t slot, std::uint64_t seed) const {
  if (auto it = recorded_.find(key(user, slot)); it != recorded_.end()) return it->second.content;
  Rng rng(derive_seed(seed, "request", user, slot));
  return sample_index(distribution(user, slot), rng.uniform());
}

std::vector<ContentTraceRecord> Workload::request_stream(std::size_t slots, std::uint64_t seed) const {
  std::vector<ContentTraceRecord> out;
  out.reserve(slots * users_.size());
  for (std::size_t k = 0; k < slots; ++k) {
    for (std::size_t i = 0; i < users_.size(); ++i) {
      ContentTraceRecord r;
      r.user_id = i;
      r.slot = k;
      const ContextVector x = context(i, k);
      for (std::size_t c = 0; c < r.context.size(); ++c) r.context[c] = x[c];
      r.content_id = request(i, k, seed) + 1;
      out.push_back(r);
    }
  }
  return out;
}

Eigen::VectorXd Workload::marginal_popularity() const {
  Eigen::VectorXd total = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(catalog_size()));
  const std::size_t week = 7 * clock_.slots_per_day;
  for (std::size_t i = 0; i < users_.size(); ++i)
    for (std::size_t k = 0; k < week; ++k) total += distribution(i, k);
  return total / total.sum();
}

Workload Workload::from_trace(const std::vector<ContentTraceRecord>& records, std::size_t users,
                              std::size_t catalog_size, std::size_t slots_per_day) {
  if (users == 0 || catalog_size == 0) throw ConfigError("trace workload needs users and contents");
  SlotClock clock{slots_per_day};
  const auto n = static_cast<Eigen::Index>(catalog_size);
  std::vector<std::array<Eigen::VectorXd, SlotClock::kBuckets>> counts(users);
  std::vector<Eigen::VectorXd> overall(users, Eigen::VectorXd::Zero(n));
  for (auto& row : counts)
    for (auto& c : row) c = Eigen::VectorXd::Zero(n);
  std::unordered_map<std::uint64_t, Recorded> recorded;
  for (const auto& r : records) {
    if (r.user_id >= users) throw ConfigError("trace user id " + std::to_string(r.user_id) + " exceeds U");
    if (r.content_id == 0 || r.content_id > catalog_size)
      throw ConfigError("trace content id " + std::to_string(r.content_id) + " outside the catalog");
    const std::size_t content = r.content_id - 1;
    counts[r.user_id][clock.bucket(r.slot)](static_cast<Eigen::Index>(content)) += 1.0;
    overall[r.user_id](static_cast<Eigen::Index>(content)) += 1.0;
    recorded[key(r.user_id, r.slot)] = {r.context, content};
  }

  std::vector<Eigen::VectorXd> distributions;
  std::vector<std::array<std::size_t, SlotClock::kBuckets>> table(users);
  std::vector<UserProfile> profiles(users);
  for (std::size_t i = 0; i < users; ++i) {
    for (std::size_t b = 0; b < SlotClock::kBuckets; ++b) {
      const Eigen::VectorXd& c = counts[i][b].sum() > 0.0 ? counts[i][b] : overall[i];
      const double mass = c.sum();
      distributions.push_back(mass > 0.0 ? Eigen::VectorXd(c / mass)
                                         : Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(catalog_size)));
      table[i][b] = distributions.size() - 1;
    }
  }
  Workload w(std::move(profiles), std::move(table), std::move(distributions), clock);
  w.recorded_ = std::move(recorded);
  return w;
}

Workload generate_workload(const WorkloadParams& params, std::uint64_t seed) {
  params.validate();
  const std::size_t n = params.catalog_size;

  std::vector<Eigen::VectorXd> distributions;
  std::vector<std::array<std::size_t, SlotClock::kBuckets>> archetype_table(params.archetypes);
  for (std::size_t a = 0; a < params.archetypes; ++a) {
    Rng rng(derive_seed(seed, "archetype", a));
    std::vector<double> base(n);
    for (std::size_t c = 0; c < n; ++c)
      base[c] = std::log(static_cast<double>(c + 1)) + params.archetype_spread * rng.normal();
    for (std::size_t b = 0; b < SlotClock::kBuckets; ++b) {
      Rng brng(derive_seed(seed, "bucket", a, b));
      std::vector<double> scores(n);
      for (std::size_t c = 0; c < n; ++c) scores[c] = base[c] + params.bucket_spread * brng.normal();
      distributions.push_back(reranked_zipf(scores, params.zipf_alpha));
      archetype_table[a][b] = distributions.size() - 1;
    }
  }

  std::vector<UserProfile> users(params.users);
  std::vector<std::array<std::size_t, SlotClock::kBuckets>> table(params.users);
  for (std::size_t i = 0; i < params.users; ++i) {
    Rng rng(derive_seed(seed, "user", i));
    UserProfile& u = users[i];
    u.archetype = static_cast<std::size_t>(rng.index(params.archetypes));
    // Archetype template: occupation code, ten-year age band, device leaning.
    u.occupation = u.archetype % Workload::kOccupations;
    u.age = 15.0 + 10.0 * static_cast<double>(u.archetype % 5) + rng.uniform(0.0, 10.0);
    u.gender = static_cast<std::size_t>(rng.index(2));
    u.device = rng.uniform() < 0.7 ? u.archetype % Workload::kDevices
                                   : static_cast<std::size_t>(rng.index(Workload::kDevices));
    table[i] = archetype_table[u.archetype];
  }
  return Workload(std::move(users), std::move(table), std::move(distributions), SlotClock{params.slots_per_day});
}

}  // namespace esncache
