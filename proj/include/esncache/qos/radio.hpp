#pragma once

#include <cstddef>
#include <span>

#include "esncache/core/geometry.hpp"

namespace esncache {

double dbm_to_watt(double dbm);
double watt_to_dbm(double watt);

struct RadioParams {
  double tx_power_dbm = 20.0;       // P
  double pathloss_exponent = 4.0;   // beta
  double noise_power_dbm = -95.0;   // sigma^2
  double bandwidth_hz = 1e6;        // B
  double cell_radius_m = 1000.0;    // r

  void validate() const;
};

// Linear-scale view used by all channel arithmetic.
struct LinearRadio {
  double tx_power_w;
  double noise_power_w;
  double pathloss_exponent;
  double bandwidth_hz;

  static LinearRadio from(const RadioParams& params);

  // P * d^-beta. Throws GeometryError for d <= 0.
  double received_power(double d) const;
};

// Signal over interference-plus-noise for a user served by `serving`.
// `cooperating[j]` marks RRHs inside the user's cluster set; those do not
// interfere. `fading[j]` is the |h|^2 draw of RRH j.
double sinr(const LinearRadio& radio, Point user, std::span<const Point> rrhs, std::size_t serving,
            std::span<const char> cooperating, std::span<const double> fading);

// B log2(1 + gamma), bit/s.
double link_capacity(double gamma, double bandwidth_hz);

// Sum of B log2(1 + gamma_t) over sub-steps of one second each, in bits.
double slot_capacity(std::span<const double> gammas, double bandwidth_hz);

}  // namespace esncache
