#include "esncache/sim/world.hpp"

#include <cmath>
#include <numbers>
#include <optional>

#include "esncache/core/error.hpp"
#include "esncache/core/rng.hpp"
#include "esncache/data/mobility.hpp"

namespace esncache {

std::vector<Point> place_rrhs(std::size_t count, double radius_m, std::uint64_t seed) {
  Rng rng(derive_seed(seed, "rrh-layout"));
  std::vector<Point> out;
  out.reserve(count);
  for (std::size_t j = 0; j < count; ++j) {
    const double rho = radius_m * std::sqrt(rng.uniform());
    const double phi = 2.0 * std::numbers::pi * rng.uniform();
    out.push_back({rho * std::cos(phi), rho * std::sin(phi)});
  }
  return out;
}

std::vector<std::vector<Point>> positions_from_trace(const std::vector<MobilityTraceRecord>& records,
                                                     std::size_t users, std::size_t slots) {
  if (records.empty()) throw ConfigError("mobility trace is empty");
  std::size_t span = 0;
  for (const auto& r : records) {
    if (r.user_id >= users) throw ConfigError("mobility trace user id exceeds U");
    span = std::max(span, r.t + 1);
  }
  std::vector<std::vector<std::optional<Point>>> raw(span, std::vector<std::optional<Point>>(users));
  for (const auto& r : records) raw[r.t][r.user_id] = Point{r.x_m, r.y_m};

  std::vector<std::vector<Point>> filled(span, std::vector<Point>(users));
  for (std::size_t i = 0; i < users; ++i) {
    std::optional<Point> first;
    for (std::size_t t = 0; t < span && !first; ++t) first = raw[t][i];
    if (!first) throw ConfigError("mobility trace has no samples for some user");
    Point last = *first;
    for (std::size_t t = 0; t < span; ++t) {
      if (raw[t][i]) last = *raw[t][i];
      filled[t][i] = last;
    }
  }
  std::vector<std::vector<Point>> out(slots + 1);
  for (std::size_t g = 0; g <= slots; ++g) out[g] = filled[g % span];
  return out;
}

World build_world(const SimConfig& cfg, std::uint64_t seed, const ExternalTraces& traces) {
  cfg.validate();
  const std::size_t total = cfg.warmup_slots + cfg.slots;
  auto rrhs = place_rrhs(cfg.rrhs, cfg.radio.cell_radius_m, seed);

  Workload workload = traces.content
                          ? Workload::from_trace(*traces.content, cfg.users, cfg.catalog_size, cfg.slots_per_day)
                          : generate_workload(cfg.workload(), derive_seed(seed, "workload"));

  std::vector<std::vector<Point>> positions =
      traces.mobility ? positions_from_trace(*traces.mobility, cfg.users, total)
                      : trace_positions(generate_mobility(cfg.mobility(), derive_seed(seed, "mobility")), total);

  return World{std::move(rrhs), std::move(workload), std::move(positions),
               LocationGrid(cfg.radio.cell_radius_m, cfg.grid_pitch_m)};
}

}  // namespace esncache
