#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>

#include "esncache/core/rng.hpp"

namespace esncache {

// -(1 / (theta tau)) log2 mean(2^{-theta C}) over cumulative-capacity draws,
// evaluated with a shifted log-sum-exp. theta <= 0 returns mean(C) / tau.
double effective_capacity(double theta, std::span<const double> cumulative, double tau);

struct EffectiveCapacityEstimate {
  double value;
  double std_error;  // delta-method standard error of `value`
};

EffectiveCapacityEstimate effective_capacity_estimate(double theta, std::span<const double> cumulative,
                                                      double tau);

using CapacitySampler = std::function<double(Rng&)>;

// Draw m uses Rng(derive_seed(seed, "ec-draw", m)).
EffectiveCapacityEstimate effective_capacity(double theta, const CapacitySampler& sampler, double tau,
                                             std::size_t n_mc, std::uint64_t seed);

double sum_effective_capacity(std::span<const double> per_user);
double long_term_average(std::span<const double> per_slot);

}  // namespace esncache
