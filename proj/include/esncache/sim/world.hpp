#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "esncache/core/geometry.hpp"
#include "esncache/data/traces.hpp"
#include "esncache/data/workload.hpp"
#include "esncache/sim/config.hpp"

namespace esncache {

// Recorded inputs that replace the synthetic generators.
struct ExternalTraces {
  const std::vector<ContentTraceRecord>* content = nullptr;
  const std::vector<MobilityTraceRecord>* mobility = nullptr;
};

// Everything about an episode that does not depend on the caching policy.
struct World {
  std::vector<Point> rrhs;
  Workload workload;
  std::vector<std::vector<Point>> positions;  // [slot][user], warmup included
  LocationGrid grid;

  std::size_t slot_count() const { return positions.empty() ? 0 : positions.size() - 1; }
};

// Uniform points in the disk. The first k points for a given seed do not
// depend on `count`.
std::vector<Point> place_rrhs(std::size_t count, double radius_m, std::uint64_t seed);

// positions[slot][user] for slots [0, slots]. Missing samples hold the last
// known position (or the first one for leading gaps); slots past the end of
// the trace wrap around it.
std::vector<std::vector<Point>> positions_from_trace(const std::vector<MobilityTraceRecord>& records,
                                                     std::size_t users, std::size_t slots);

World build_world(const SimConfig& cfg, std::uint64_t seed, const ExternalTraces& traces = {});

}  // namespace esncache
