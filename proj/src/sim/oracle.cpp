#include "esncache/sim/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "esncache/core/combinatorics.hpp"
#include "esncache/core/error.hpp"

namespace esncache {
namespace {

bool better(double candidate, double incumbent) {
  return candidate - incumbent > 1e-12 * std::max(1.0, std::abs(incumbent));
}

// Per-RRH content scores sum_i p_in w_in over the RRH's users in one slot.
// `cloud_penalty` subtracts c_i for cloud contents (joint scope).
std::vector<std::vector<double>> rrh_scores(const OracleSlot& slot, std::size_t rrhs, std::size_t catalog,
                                            std::span<const std::size_t> cloud) {
  std::vector<std::vector<double>> scores(rrhs);
  for (std::size_t i = 0; i < slot.serving.size(); ++i) {
    auto& s = scores.at(slot.serving[i]);
    if (s.empty()) s.assign(catalog, 0.0);
    for (std::size_t n = 0; n < catalog; ++n) {
      double w = slot.a[i];
      if (std::binary_search(cloud.begin(), cloud.end(), n)) w -= slot.c[i];
      s[n] += slot.demand[i](static_cast<Eigen::Index>(n)) * w;
    }
  }
  return scores;
}

std::vector<std::vector<std::size_t>> choose_rrh(const OracleSlot& slot, std::size_t rrhs, std::size_t catalog,
                                                 std::size_t capacity, std::span<const std::size_t> cloud) {
  const auto scores = rrh_scores(slot, rrhs, catalog, cloud);
  std::vector<std::vector<std::size_t>> caches(rrhs);
  for (std::size_t r = 0; r < rrhs; ++r)
    if (!scores[r].empty()) caches[r] = best_subset(scores[r], capacity);
  return caches;
}

double period_objective(std::span<const OracleSlot> period, std::span<const std::size_t> cloud,
                        const std::vector<std::vector<std::vector<std::size_t>>>& rrh) {
  double total = 0.0;
  for (std::size_t o = 0; o < period.size(); ++o) total += planned_objective(period[o], cloud, rrh[o]);
  return total;
}

}  // namespace

double oracle_search_size(std::size_t catalog, std::size_t cloud_capacity, std::size_t rrh_capacity,
                          std::size_t rrhs) {
  return binomial(catalog, cloud_capacity) *
         std::pow(binomial(catalog, rrh_capacity), static_cast<double>(rrhs));
}

std::vector<std::size_t> best_subset(std::span<const double> scores, std::size_t k) {
  if (k > scores.size()) throw ConfigError("subset larger than the catalog");
  std::vector<std::size_t> best;
  double best_value = 0.0;
  for_each_combination(scores.size(), k, [&](const std::vector<std::size_t>& idx) {
    double v = 0.0;
    for (std::size_t n : idx) v += scores[n];
    if (best.size() != k || better(v, best_value)) {
      best = idx;
      best_value = v;
    }
  });
  return best;
}

double planned_objective(const OracleSlot& slot, std::span<const std::size_t> cloud,
                         const std::vector<std::vector<std::size_t>>& rrh_caches) {
  double total = 0.0;
  for (std::size_t i = 0; i < slot.serving.size(); ++i) {
    const auto& local = rrh_caches.at(slot.serving[i]);
    const Eigen::VectorXd& p = slot.demand[i];
    for (std::size_t n : local) total += p(static_cast<Eigen::Index>(n)) * slot.a[i];
    for (std::size_t n : cloud)
      if (!std::binary_search(local.begin(), local.end(), n)) total += p(static_cast<Eigen::Index>(n)) * slot.c[i];
  }
  return total;
}

OracleDecision solve_oracle(std::span<const OracleSlot> period, std::size_t rrhs, std::size_t catalog,
                            std::size_t cloud_capacity, std::size_t rrh_capacity, OracleScope scope,
                            double limit) {
  const double size = oracle_search_size(catalog, cloud_capacity, rrh_capacity, rrhs);
  if (!(size <= limit))
    throw InstanceTooLargeError("oracle search size " + std::to_string(size) + " exceeds the limit " +
                                std::to_string(limit));
  OracleDecision d;
  if (scope == OracleScope::Hierarchical) {
    for (const auto& slot : period) d.rrh.push_back(choose_rrh(slot, rrhs, catalog, rrh_capacity, {}));
    std::vector<double> score(catalog, 0.0);
    for (std::size_t o = 0; o < period.size(); ++o) {
      const auto& slot = period[o];
      for (std::size_t i = 0; i < slot.serving.size(); ++i) {
        const auto& local = d.rrh[o][slot.serving[i]];
        for (std::size_t n = 0; n < catalog; ++n)
          if (!std::binary_search(local.begin(), local.end(), n))
            score[n] += slot.demand[i](static_cast<Eigen::Index>(n)) * slot.c[i];
      }
    }
    d.cloud = best_subset(score, cloud_capacity);
    d.objective = period_objective(period, d.cloud, d.rrh);
    return d;
  }

  bool first = true;
  for_each_combination(catalog, cloud_capacity, [&](const std::vector<std::size_t>& cloud) {
    std::vector<std::vector<std::vector<std::size_t>>> rrh;
    for (const auto& slot : period) rrh.push_back(choose_rrh(slot, rrhs, catalog, rrh_capacity, cloud));
    const double v = period_objective(period, cloud, rrh);
    if (first || better(v, d.objective)) {
      d.cloud = cloud;
      d.rrh = std::move(rrh);
      d.objective = v;
      first = false;
    }
  });
  return d;
}

}  // namespace esncache
