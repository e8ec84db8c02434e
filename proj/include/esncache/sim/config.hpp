#pragma once

#include <cstddef>
#include <cstdint>

#include "esncache/data/mobility.hpp"
#include "esncache/data/workload.hpp"
#include "esncache/esn/content_esn.hpp"
#include "esncache/esn/mobility_esn.hpp"
#include "esncache/qos/link_qos.hpp"
#include "esncache/qos/radio.hpp"

namespace esncache {

// Every knob of one episode. Units: meters, Hz, bits, bit/s, dBm, seconds;
// QoS exponents are per capacity unit (capacity_unit_bits).
struct SimConfig {
  RadioParams radio;
  WiredParams wired;

  std::size_t rrhs = 1000;          // R
  std::size_t users = 64;           // U
  std::size_t catalog_size = 50;    // N
  std::size_t cloud_capacity = 6;   // C_c
  std::size_t rrh_capacity = 3;     // C_r

  double theta_O = 0.05;
  double capacity_unit_bits = 1e6;
  std::size_t substeps = 10;
  std::size_t n_mc = 16;
  double min_distance_m = 1.0;

  std::size_t slots = 300;           // T
  std::size_t cloud_period = 30;     // T_tau
  std::size_t mobility_period = 3;   // H
  std::size_t warmup_slots = 270;
  std::size_t slots_per_day = 90;

  double epsilon = 0.05;
  double delta = 0.05;
  double chi = 0.85;

  // Content ESN.
  std::size_t reservoir_units = 1000;  // N_w
  std::size_t context_dim = 7;         // K
  double learning_rate = 0.01;         // lambda^alpha
  double spectral_radius = 0.9;
  double reservoir_density = 0.1;
  double input_scaling = 0.05;

  // Mobility ESN.
  std::size_t cycle_units = 40;    // W
  std::size_t horizon = 10;        // N_s
  double ridge_lambda = 0.5;       // lambda
  WeightDistribution::Kind cycle_kind = WeightDistribution::Kind::PointMass;
  double cycle_lo = 0.9;
  double cycle_hi = 0.9;
  std::size_t training_window = 0;  // N_tr, 0 = all history
  double grid_pitch_m = 50.0;

  // Synthetic workload and mobility.
  double zipf_alpha = 0.8;
  std::size_t archetypes = 4;
  double archetype_spread = 0.3;
  double bucket_spread = 0.2;
  std::size_t waypoints = 3;
  double speed_m_per_slot = 25.0;
  double waypoint_spread_m = 300.0;

  bool oracle_predictions = false;
  double oracle_limit = 1e6;

  void validate() const;

  WeightDistribution cycle_weights() const;
  ContentEsnConfig content_esn() const;
  WorkloadParams workload() const;
  MobilityParams mobility() const;
};

}  // namespace esncache
