#include "esncache/cache/sampling.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "esncache/core/error.hpp"
#include "esncache/core/rng.hpp"

namespace esncache {

std::size_t hoeffding_sample_size(double epsilon, double delta) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw ConfigError("epsilon must be in (0, 1)");
  if (!(delta > 0.0 && delta <= 1.0)) throw ConfigError("delta must be in (0, 1]");
  const double n = -std::log(delta) / (2.0 * epsilon * epsilon);
  // Guard against 600.0000000001 style rounding noise.
  return static_cast<std::size_t>(std::ceil(n - 1e-9));
}

SamplingPlan SamplingPlan::make(double epsilon, double delta) {
  return {epsilon, delta, hoeffding_sample_size(epsilon, delta)};
}

PopularityEstimate estimate_popularity(std::span<const DemandRecord> stream, const SamplingPlan& plan,
                                       std::uint64_t seed) {
  if (stream.empty()) throw ConfigError("popularity estimation needs a non-empty stream");
  const Eigen::Index n = stream.front().demand.size();
  for (const auto& r : stream)
    if (r.demand.size() != n) throw ConfigError("demand vectors disagree on catalog size");

  Eigen::VectorXd total = Eigen::VectorXd::Zero(n);
  const std::size_t target = std::max<std::size_t>(plan.sample_size, 1);
  if (stream.size() <= target) {
    spdlog::debug("popularity: stream of {} records not above N_n={}, scanning all", stream.size(),
                  plan.sample_size);
    for (const auto& r : stream) total += r.weight * r.demand;
    return {total / static_cast<double>(stream.size()), stream.size(), true};
  }

  // Group record indices by stratum, keeping stream order inside a group.
  std::vector<std::size_t> order(stream.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return stream[a].stratum < stream[b].stratum; });
  std::vector<std::pair<std::size_t, std::size_t>> groups;  // [begin, end) in `order`
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j < order.size() && stream[order[j]].stratum == stream[order[i]].stratum) ++j;
    groups.emplace_back(i, j);
    i = j;
  }

  // Proportional quotas, largest remainder first, earlier strata on ties.
  std::vector<std::size_t> quota(groups.size());
  std::vector<std::pair<double, std::size_t>> remainders;
  std::size_t assigned = 0;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const double exact = static_cast<double>(target) *
                         static_cast<double>(groups[g].second - groups[g].first) /
                         static_cast<double>(stream.size());
    quota[g] = static_cast<std::size_t>(std::floor(exact));
    assigned += quota[g];
    remainders.emplace_back(exact - std::floor(exact), g);
  }
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (std::size_t i = 0; assigned < target; ++i, ++assigned) ++quota[remainders[i].second];

  Rng rng(seed);
  std::size_t sampled = 0;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    std::vector<std::size_t> pool(order.begin() + static_cast<std::ptrdiff_t>(groups[g].first),
                                  order.begin() + static_cast<std::ptrdiff_t>(groups[g].second));
    const std::size_t take = std::min(quota[g], pool.size());
    for (std::size_t i = 0; i < take; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(rng.index(pool.size() - i));
      std::swap(pool[i], pool[j]);
      const auto& r = stream[pool[i]];
      total += r.weight * r.demand;
    }
    sampled += take;
  }
  return {total / static_cast<double>(sampled), sampled, false};
}

CoverageResult sampling_coverage(std::span<const DemandRecord> stream, const SamplingPlan& plan,
                                 std::size_t trials, std::uint64_t seed) {
  if (trials == 0) throw ConfigError("coverage needs at least one trial");
  const SamplingPlan everything{plan.epsilon, plan.delta, stream.size()};
  const Eigen::VectorXd exact = estimate_popularity(stream, everything, seed).popularity;
  CoverageResult out;
  out.trials = trials;
  double total = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    const auto est = estimate_popularity(stream, plan, derive_seed(seed, "coverage", t));
    const double err = (est.popularity - exact).lpNorm<Eigen::Infinity>();
    total += err;
    if (err > plan.epsilon) ++out.failures;
  }
  out.failure_rate = static_cast<double>(out.failures) / static_cast<double>(trials);
  out.mean_error = total / static_cast<double>(trials);
  return out;
}

double distribution_distance(const Eigen::VectorXd& p, const Eigen::VectorXd& q) {
  if (p.size() != q.size()) throw ConfigError("distribution length mismatch");
  return 0.5 * (p - q).lpNorm<1>();
}

double distribution_distance(const Eigen::VectorXd& p, const Eigen::VectorXd& q, const SamplingPlan& plan,
                             std::uint64_t seed) {
  if (p.size() != q.size()) throw ConfigError("distribution length mismatch");
  if (p.size() == 0) return 0.0;
  const std::size_t draws = std::max<std::size_t>(plan.sample_size, 1);
  Rng rng(seed);
  double acc = 0.0;
  for (std::size_t i = 0; i < draws; ++i) {
    const auto c = static_cast<Eigen::Index>(rng.index(static_cast<std::uint64_t>(p.size())));
    acc += std::abs(p(c) - q(c));
  }
  return 0.5 * static_cast<double>(p.size()) * acc / static_cast<double>(draws);
}

}  // namespace esncache
