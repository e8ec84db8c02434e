#include "esncache/sim/config.hpp"

#include "esncache/core/error.hpp"

namespace esncache {

void SimConfig::validate() const {
  radio.validate();
  wired.validate();
  if (rrhs == 0) throw ConfigError("R must be positive");
  if (users == 0) throw ConfigError("U must be positive");
  if (catalog_size < 2) throw ConfigError("N must be at least 2");
  if (cloud_capacity > catalog_size) throw ConfigError("C_c exceeds N");
  if (rrh_capacity > catalog_size) throw ConfigError("C_r exceeds N");
  if (!(theta_O > 0.0)) throw ConfigError("theta_O must be positive");
  if (!(capacity_unit_bits > 0.0)) throw ConfigError("capacity_unit must be positive");
  if (substeps == 0) throw ConfigError("substeps must be positive");
  if (n_mc == 0) throw ConfigError("n_mc must be positive");
  if (!(min_distance_m > 0.0)) throw ConfigError("min_distance must be positive");
  if (slots == 0) throw ConfigError("T must be positive");
  if (cloud_period == 0 || slots % cloud_period != 0) throw ConfigError("T_tau must divide T");
  if (mobility_period == 0 || cloud_period % mobility_period != 0) throw ConfigError("H must divide T_tau");
  if (slots_per_day == 0 || slots_per_day % mobility_period != 0) throw ConfigError("H must divide slots_per_day");
  if (warmup_slots % cloud_period != 0) throw ConfigError("T_tau must divide warmup");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw ConfigError("epsilon must be in (0, 1)");
  if (!(delta > 0.0 && delta <= 1.0)) throw ConfigError("delta must be in (0, 1]");
  if (!(chi >= 0.0 && chi <= 1.0)) throw ConfigError("chi must be in [0, 1]");
  if (context_dim != ContextVector::kDefaultDim) throw ConfigError("K must be 7 (fixed context schema)");
  content_esn().validate();
  if (cycle_units == 0) throw ConfigError("W must be positive");
  if (horizon == 0) throw ConfigError("N_s must be positive");
  if (!(ridge_lambda >= 0.0)) throw ConfigError("lambda must be non-negative");
  cycle_weights();
  if (!(grid_pitch_m > 0.0)) throw ConfigError("grid_pitch must be positive");
  workload().validate();
  mobility().validate();
  if (!(oracle_limit >= 1.0)) throw ConfigError("oracle_limit must be at least 1");
}

WeightDistribution SimConfig::cycle_weights() const {
  switch (cycle_kind) {
    case WeightDistribution::Kind::PointMass:
      return WeightDistribution::point_mass(cycle_hi);
    case WeightDistribution::Kind::SymmetricBinary:
      return WeightDistribution::symmetric_binary(cycle_hi);
    case WeightDistribution::Kind::Uniform:
      return WeightDistribution::uniform(cycle_lo, cycle_hi);
  }
  throw ConfigError("unknown cycle weight law");
}

ContentEsnConfig SimConfig::content_esn() const {
  ContentEsnConfig c;
  c.reservoir_size = reservoir_units;
  c.context_dim = context_dim;
  c.num_contents = catalog_size;
  c.learning_rate = learning_rate;
  c.spectral_radius = spectral_radius;
  c.density = reservoir_density;
  c.input_scaling = input_scaling;
  return c;
}

WorkloadParams SimConfig::workload() const {
  WorkloadParams w;
  w.users = users;
  w.catalog_size = catalog_size;
  w.zipf_alpha = zipf_alpha;
  w.archetypes = archetypes;
  w.archetype_spread = archetype_spread;
  w.bucket_spread = bucket_spread;
  w.slots_per_day = slots_per_day;
  return w;
}

MobilityParams SimConfig::mobility() const {
  MobilityParams m;
  m.users = users;
  m.radius_m = radio.cell_radius_m;
  m.waypoints = waypoints;
  m.speed_m_per_slot = speed_m_per_slot;
  m.spread_m = waypoint_spread_m;
  m.slots_per_day = slots_per_day;
  return m;
}

}  // namespace esncache
