#include "esncache/sim/channel.hpp"

#include <algorithm>
#include <cmath>

#include "esncache/core/error.hpp"
#include "esncache/core/rng.hpp"

namespace esncache {

double fading_draw(std::uint64_t key, std::uint64_t counter) {
  const std::uint64_t h = splitmix64(key ^ (counter * 0x9E3779B97F4A7C15ULL));
  const double u = static_cast<double>(h >> 11) * 0x1.0p-53;
  return -std::log1p(-u);
}

ChannelModel::ChannelModel(const SimConfig& cfg, std::span<const Point> rrhs)
    : radio_(LinearRadio::from(cfg.radio)),
      rrhs_(rrhs.begin(), rrhs.end()),
      substeps_(cfg.substeps),
      n_mc_(cfg.n_mc),
      min_distance_(cfg.min_distance_m),
      unit_bits_(cfg.capacity_unit_bits) {
  if (rrhs_.empty()) throw ConfigError("channel needs at least one RRH");
}

void ChannelModel::capacity_draws(Point from, Point to, std::size_t serving,
                                  std::span<const std::size_t> cooperating,
                                  std::span<const std::size_t> active, std::uint64_t key,
                                  std::span<double> out) const {
  const std::size_t R = rrhs_.size();
  if (serving >= R) throw ConfigError("serving RRH out of range");
  if (out.size() != n_mc_) throw ConfigError("capacity draw buffer has the wrong size");
  if (!std::binary_search(cooperating.begin(), cooperating.end(), serving))
    throw ConfigError("serving RRH missing from its cooperating set");

  std::vector<std::size_t> interferers;
  interferers.reserve(active.size());
  for (std::size_t j : active) {
    if (j >= R) throw ConfigError("active RRH out of range");
    if (!std::binary_search(cooperating.begin(), cooperating.end(), j)) interferers.push_back(j);
  }

  // Mean received powers per sub-step: serving first, then interferers.
  const std::size_t J = interferers.size() + 1;
  std::vector<double> power(substeps_ * J);
  for (std::size_t t = 0; t < substeps_; ++t) {
    const double f = (static_cast<double>(t) + 0.5) / static_cast<double>(substeps_);
    const Point p{from.x + f * (to.x - from.x), from.y + f * (to.y - from.y)};
    double* row = power.data() + t * J;
    row[0] = radio_.received_power(std::max(distance(p, rrhs_[serving]), min_distance_));
    for (std::size_t q = 0; q < interferers.size(); ++q)
      row[q + 1] = radio_.received_power(std::max(distance(p, rrhs_[interferers[q]]), min_distance_));
  }

  const double scale = radio_.bandwidth_hz / unit_bits_;
  for (std::size_t m = 0; m < n_mc_; ++m) {
    double total = 0.0;
    for (std::size_t t = 0; t < substeps_; ++t) {
      const std::uint64_t base = (m * substeps_ + t) * R;
      const double* row = power.data() + t * J;
      double interference = 0.0;
      for (std::size_t q = 0; q < interferers.size(); ++q)
        interference += row[q + 1] * fading_draw(key, base + interferers[q]);
      const double gamma = row[0] * fading_draw(key, base + serving) / (interference + radio_.noise_power_w);
      total += std::log2(1.0 + gamma);
    }
    out[m] = scale * total;
  }
}

}  // namespace esncache
