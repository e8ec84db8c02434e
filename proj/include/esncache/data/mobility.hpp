#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "esncache/core/geometry.hpp"

namespace esncache {

struct MobilityParams {
  std::size_t users = 64;
  double radius_m = 1000.0;
  std::size_t waypoints = 3;
  double speed_m_per_slot = 25.0;
  double spread_m = 300.0;  // waypoints fall within this distance of home
  std::size_t slots_per_day = 90;

  void validate() const;
};

// Closed tour over waypoints with a dwell (in slots) after each arrival.
struct MobilitySchedule {
  std::vector<Point> waypoints;
  std::vector<std::size_t> dwell;
  double speed = 0.0;  // meters per slot

  // Slots needed for one tour.
  std::size_t cycle_length() const;
};

struct UserMotion {
  Point position;
  Point leg_start;         // where the current leg began
  std::size_t target = 0;  // waypoint being approached or dwelt at
  std::size_t progress = 0;  // slots spent on the current leg
  std::size_t dwell_left = 0;
  bool arrived = true;

  bool operator==(const UserMotion&) const = default;
};

// Each schedule's cycle is exactly one day. A user whose tour would not fit
// at the nominal speed is sped up just enough.
std::vector<MobilitySchedule> generate_mobility(const MobilityParams& params, std::uint64_t seed);

// At waypoint 0, starting its dwell.
UserMotion start_motion(const MobilitySchedule& schedule);

// Advances every user by `slots` whole slots: dwell, then move toward the
// target at constant speed, snapping to it on arrival.
void step_mobility(const std::vector<MobilitySchedule>& schedules, std::vector<UserMotion>& motions,
                   std::size_t slots = 1);

// positions[slot][user] for slots [0, slots].
std::vector<std::vector<Point>> trace_positions(const std::vector<MobilitySchedule>& schedules,
                                                std::size_t slots);

}  // namespace esncache
