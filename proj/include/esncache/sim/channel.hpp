#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "esncache/core/geometry.hpp"
#include "esncache/qos/radio.hpp"
#include "esncache/sim/config.hpp"

namespace esncache {

// Unit-mean exponential |h|^2 addressed by (key, counter). Any subset of
// draws can be evaluated independently and always yields the same values,
// so clustered and unclustered SINRs share their fading.
double fading_draw(std::uint64_t key, std::uint64_t counter);

// Monte-Carlo draws of the capacity a user accumulates over one slot.
class ChannelModel {
 public:
  ChannelModel(const SimConfig& cfg, std::span<const Point> rrhs);

  // The user moves linearly from `from` to `to` and is sampled at the
  // midpoint of every one-second sub-step. Only `active` RRHs (sorted; those
  // serving someone this slot) transmit, and those in `cooperating` (sorted,
  // containing `serving`) do not interfere. Writes n_mc draws, in capacity
  // units, to `out`.
  void capacity_draws(Point from, Point to, std::size_t serving, std::span<const std::size_t> cooperating,
                      std::span<const std::size_t> active, std::uint64_t key, std::span<double> out) const;

  // Slot length in seconds.
  double tau() const { return static_cast<double>(substeps_); }
  std::size_t n_mc() const { return n_mc_; }

 private:
  LinearRadio radio_;
  std::vector<Point> rrhs_;
  std::size_t substeps_;
  std::size_t n_mc_;
  double min_distance_;
  double unit_bits_;
};

}  // namespace esncache
