#include "esncache/data/mobility.hpp"

#include <cmath>
#include <numbers>

#include "esncache/core/error.hpp"
#include "esncache/core/rng.hpp"

namespace esncache {

namespace {

std::size_t leg_slots(double d, double speed) {
  if (d <= 0.0) return 1;
  if (!(speed > 0.0)) return static_cast<std::size_t>(-1);
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(d / speed - 1e-12)));
}

Point point_in_disk(Rng& rng, Point center, double radius) {
  const double rho = radius * std::sqrt(rng.uniform());
  const double phi = 2.0 * std::numbers::pi * rng.uniform();
  return {center.x + rho * std::cos(phi), center.y + rho * std::sin(phi)};
}

}  // namespace

void MobilityParams::validate() const {
  if (users == 0) throw ConfigError("U must be positive");
  if (!(radius_m > 0.0)) throw ConfigError("r must be positive");
  if (waypoints == 0) throw ConfigError("waypoints must be positive");
  if (!(speed_m_per_slot >= 0.0)) throw ConfigError("speed must be non-negative");
  if (!(spread_m >= 0.0)) throw ConfigError("waypoint spread must be non-negative");
  if (slots_per_day < waypoints) throw ConfigError("slots_per_day must be at least the waypoint count");
}

std::size_t MobilitySchedule::cycle_length() const {
  std::size_t total = 0;
  const std::size_t m = waypoints.size();
  for (std::size_t i = 0; i < m; ++i)
    total += leg_slots(distance(waypoints[i], waypoints[(i + 1) % m]), speed) + dwell[(i + 1) % m];
  return total;
}

std::vector<MobilitySchedule> generate_mobility(const MobilityParams& params, std::uint64_t seed) {
  params.validate();
  std::vector<MobilitySchedule> out(params.users);
  const std::size_t m = params.waypoints;
  for (std::size_t i = 0; i < params.users; ++i) {
    Rng rng(derive_seed(seed, "schedule", i));
    MobilitySchedule& s = out[i];
    const Point home = point_in_disk(rng, {0.0, 0.0}, params.radius_m);
    s.waypoints.push_back(home);
    for (std::size_t w = 1; w < m; ++w) {
      Point p = point_in_disk(rng, home, params.spread_m);
      for (int attempt = 0; attempt < 100 && std::hypot(p.x, p.y) > params.radius_m; ++attempt)
        p = point_in_disk(rng, home, params.spread_m);
      const double norm = std::hypot(p.x, p.y);
      if (norm > params.radius_m) p = {p.x * 0.999 * params.radius_m / norm, p.y * 0.999 * params.radius_m / norm};
      s.waypoints.push_back(p);
    }

    double path = 0.0;
    for (std::size_t w = 0; w < m; ++w) path += distance(s.waypoints[w], s.waypoints[(w + 1) % m]);
    s.speed = params.speed_m_per_slot;
    auto travel = [&] {
      std::size_t t = 0;
      for (std::size_t w = 0; w < m; ++w) t += leg_slots(distance(s.waypoints[w], s.waypoints[(w + 1) % m]), s.speed);
      return t;
    };
    if (m > 1 && (s.speed <= 0.0 || travel() > params.slots_per_day)) {
      s.speed = std::max(s.speed, path / static_cast<double>(params.slots_per_day - m + 1));
      while (travel() > params.slots_per_day) s.speed *= 1.01;
    }

    // Spread the spare slots over the dwells with random shares.
    const std::size_t spare = params.slots_per_day - (m > 1 ? travel() : 1);
    std::vector<double> share(m);
    double share_sum = 0.0;
    for (auto& v : share) share_sum += (v = 0.2 + rng.uniform());
    s.dwell.assign(m, 0);
    std::size_t given = 0;
    for (std::size_t w = 0; w < m; ++w) {
      s.dwell[w] = static_cast<std::size_t>(std::floor(static_cast<double>(spare) * share[w] / share_sum));
      given += s.dwell[w];
    }
    s.dwell[0] += spare - given;
  }
  return out;
}

UserMotion start_motion(const MobilitySchedule& schedule) {
  if (schedule.waypoints.empty()) throw ConfigError("schedule has no waypoints");
  UserMotion u;
  u.position = u.leg_start = schedule.waypoints[0];
  u.dwell_left = schedule.dwell.empty() ? 0 : schedule.dwell[0];
  return u;
}

void step_mobility(const std::vector<MobilitySchedule>& schedules, std::vector<UserMotion>& motions,
                   std::size_t slots) {
  if (schedules.size() != motions.size()) throw ConfigError("one motion state per schedule is required");
  for (std::size_t i = 0; i < schedules.size(); ++i) {
    const MobilitySchedule& s = schedules[i];
    UserMotion& u = motions[i];
    for (std::size_t step = 0; step < slots; ++step) {
      if (u.arrived) {
        if (u.dwell_left > 0) {
          --u.dwell_left;
          continue;
        }
        u.target = (u.target + 1) % s.waypoints.size();
        u.arrived = false;
        u.leg_start = u.position;
        u.progress = 0;
      }
      // Positions follow from the slot count on the leg so that a tour
      // always takes exactly cycle_length() slots.
      const Point goal = s.waypoints[u.target];
      const double d = distance(u.leg_start, goal);
      ++u.progress;
      if (u.progress >= leg_slots(d, s.speed)) {
        u.position = goal;
        u.arrived = true;
        u.dwell_left = s.dwell[u.target];
      } else {
        const double f = static_cast<double>(u.progress) * s.speed / d;
        u.position = {u.leg_start.x + f * (goal.x - u.leg_start.x), u.leg_start.y + f * (goal.y - u.leg_start.y)};
      }
    }
  }
}

std::vector<std::vector<Point>> trace_positions(const std::vector<MobilitySchedule>& schedules, std::size_t slots) {
  std::vector<UserMotion> motions;
  motions.reserve(schedules.size());
  for (const auto& s : schedules) motions.push_back(start_motion(s));
  std::vector<std::vector<Point>> out;
  out.reserve(slots + 1);
  for (std::size_t k = 0; k <= slots; ++k) {
    std::vector<Point> row;
    row.reserve(motions.size());
    for (const auto& u : motions) row.push_back(u.position);
    out.push_back(std::move(row));
    if (k < slots) step_mobility(schedules, motions, 1);
  }
  return out;
}

}  // namespace esncache
