#include "esncache/qos/effective_capacity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <vector>

#include "esncache/core/error.hpp"

namespace esncache {

namespace {

double mean(std::span<const double> v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace

EffectiveCapacityEstimate effective_capacity_estimate(double theta, std::span<const double> cumulative,
                                                      double tau) {
  if (cumulative.empty()) throw ConfigError("effective capacity needs at least one draw");
  if (!(tau > 0.0)) throw ConfigError("tau must be positive");
  const auto n = static_cast<double>(cumulative.size());

  if (!(theta > 0.0)) {
    const double mu = mean(cumulative);
    double ss = 0.0;
    for (double c : cumulative) ss += (c - mu) * (c - mu);
    const double se = cumulative.size() > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0;
    return {mu / tau, se / tau};
  }

  // Exponents x_m = -theta C_m in base 2; shift by the largest.
  double shift = -std::numeric_limits<double>::infinity();
  for (double c : cumulative) shift = std::max(shift, -theta * c);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (double c : cumulative) {
    const double y = std::exp2(-theta * c - shift);
    sum += y;
    sum_sq += y * y;
  }
  const double y_bar = sum / n;
  const double value = -(shift + std::log2(y_bar)) / (theta * tau);

  double se = 0.0;
  if (cumulative.size() > 1) {
    const double var = std::max(0.0, (sum_sq - n * y_bar * y_bar) / (n - 1.0));
    se = std::sqrt(var / n) / (y_bar * std::numbers::ln2 * theta * tau);
  }
  return {value, se};
}

double effective_capacity(double theta, std::span<const double> cumulative, double tau) {
  return effective_capacity_estimate(theta, cumulative, tau).value;
}

EffectiveCapacityEstimate effective_capacity(double theta, const CapacitySampler& sampler, double tau,
                                             std::size_t n_mc, std::uint64_t seed) {
  if (n_mc == 0) throw ConfigError("n_mc must be positive");
  std::vector<double> draws(n_mc);
  for (std::size_t m = 0; m < n_mc; ++m) {
    Rng rng(derive_seed(seed, "ec-draw", m));
    draws[m] = sampler(rng);
  }
  return effective_capacity_estimate(theta, draws, tau);
}

double sum_effective_capacity(std::span<const double> per_user) {
  return std::accumulate(per_user.begin(), per_user.end(), 0.0);
}

double long_term_average(std::span<const double> per_slot) {
  if (per_slot.empty()) return 0.0;
  return std::accumulate(per_slot.begin(), per_slot.end(), 0.0) / static_cast<double>(per_slot.size());
}

}  // namespace esncache
