#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "esncache/core/error.hpp"
#include "esncache/data/mobility.hpp"
#include "esncache/data/traces.hpp"
#include "esncache/data/workload.hpp"

using namespace esncache;

namespace {

WorkloadParams workload_params(double alpha, std::size_t archetypes, std::size_t n = 50) {
  WorkloadParams p;
  p.users = 32;
  p.catalog_size = n;
  p.zipf_alpha = alpha;
  p.archetypes = archetypes;
  return p;
}

std::vector<std::size_t> request_counts(const Workload& w, std::size_t slots, std::uint64_t seed) {
  std::vector<std::size_t> counts(w.catalog_size(), 0);
  for (const auto& r : w.request_stream(slots, seed)) ++counts[r.content_id - 1];
  return counts;
}

}  // namespace

TEST_CASE("slot clock") {
  SlotClock clock{90};
  CHECK(clock.hour(0) == 0);
  CHECK(clock.hour(89) == 23);
  CHECK(clock.weekday(90) == 1);
  CHECK(clock.bucket(0) != clock.bucket(45));
  CHECK(clock.bucket(5 * 90) != clock.bucket(0));
}

TEST_CASE("zero exponent gives a near-uniform marginal") {
  auto p = workload_params(0.0, 1);
  p.archetype_spread = 0.0;
  p.bucket_spread = 0.0;
  const auto m = generate_workload(p, 1).marginal_popularity();
  CHECK(m.sum() == doctest::Approx(1.0));
  CHECK(m.maxCoeff() - m.minCoeff() < 1e-9);
}

TEST_CASE("one archetype shares one conditional distribution") {
  const auto w = generate_workload(workload_params(0.8, 1), 3);
  for (std::size_t slot : {0u, 30u, 400u})
    for (std::size_t u = 1; u < w.user_count(); ++u) CHECK(w.distribution(u, slot) == w.distribution(0, slot));
}

TEST_CASE("Zipf marginal shape") {
  auto p = workload_params(1.0, 4, 100);
  const auto w = generate_workload(p, 5);
  const auto counts = request_counts(w, 630, 5);
  double total = 0.0;
  for (auto c : counts) total += static_cast<double>(c);
  const double top = static_cast<double>(*std::max_element(counts.begin(), counts.end())) / total;
  CHECK(std::abs(top - 0.193) <= 0.02);

  // Log-log slope of the sorted marginal.
  auto m = w.marginal_popularity();
  std::vector<double> sorted(m.begin(), m.end());
  std::sort(sorted.rbegin(), sorted.rend());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const int n = 20;
  for (int r = 0; r < n; ++r) {
    const double x = std::log(r + 1.0), y = std::log(sorted[static_cast<std::size_t>(r)]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  CHECK(std::abs(slope + 1.0) <= 0.1);
}

TEST_CASE("workload contexts are normalized and deterministic") {
  const auto a = generate_workload(workload_params(0.8, 4), 8);
  const auto b = generate_workload(workload_params(0.8, 4), 8);
  CHECK(a.request_stream(20, 1) == b.request_stream(20, 1));
  const auto x = a.context(3, 17);
  CHECK(x.size() == 7);
  for (std::size_t i = 0; i < x.size(); ++i) {
    CHECK(x[i] >= 0.0);
    CHECK(x[i] <= 1.0);
  }
  CHECK_THROWS_AS(generate_workload(workload_params(-1.0, 4), 1), ConfigError);
}

TEST_CASE("mobility step arithmetic") {
  MobilitySchedule s;
  s.waypoints = {{0, 0}, {30, 40}};
  s.dwell = {0, 0};
  s.speed = 5.0;
  std::vector<MobilitySchedule> schedules{s};
  std::vector<UserMotion> motion{start_motion(s)};
  step_mobility(schedules, motion, 1);
  CHECK(motion[0].position.x == doctest::Approx(3.0));
  CHECK(motion[0].position.y == doctest::Approx(4.0));

  schedules[0].speed = 0.0;
  std::vector<UserMotion> still{start_motion(schedules[0])};
  step_mobility(schedules, still, 7);
  CHECK(still[0].position == Point{0, 0});
}

TEST_CASE("generated tours repeat daily") {
  MobilityParams p;
  p.users = 6;
  p.slots_per_day = 90;
  const auto schedules = generate_mobility(p, 2);
  const auto trace = trace_positions(schedules, 300);
  for (const auto& s : schedules) CHECK(s.cycle_length() == 90);
  for (std::size_t k = 0; k + 90 <= 300; k += 37)
    for (std::size_t u = 0; u < p.users; ++u) {
      CHECK(trace[k][u].x == doctest::Approx(trace[k + 90][u].x));
      CHECK(trace[k][u].y == doctest::Approx(trace[k + 90][u].y));
    }
}

TEST_CASE("one waypoint stays put and two commute") {
  MobilityParams p;
  p.users = 3;
  p.waypoints = 1;
  const auto still = trace_positions(generate_mobility(p, 1), 120);
  for (std::size_t k = 1; k <= 120; ++k) CHECK(still[k][0] == still[0][0]);

  p.waypoints = 2;
  const auto schedules = generate_mobility(p, 1);
  const auto trace = trace_positions(schedules, 90);
  const Point a = schedules[0].waypoints[0], b = schedules[0].waypoints[1];
  bool reached_b = false;
  for (const auto& row : trace) reached_b = reached_b || distance(row[0], b) < 1e-9;
  CHECK(reached_b);
  CHECK(distance(trace[90][0], a) < 1e-9);
}

TEST_CASE("position autocorrelation peaks at the daily period") {
  MobilityParams p;
  p.users = 1;
  p.waypoints = 3;
  const auto trace = trace_positions(generate_mobility(p, 4), 900);
  std::vector<double> x;
  for (const auto& row : trace) x.push_back(row[0].x);
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(x.size());
  auto acf = [&](std::size_t lag) {
    double s = 0.0;
    for (std::size_t t = 0; t + lag < x.size(); ++t) s += (x[t] - mean) * (x[t + lag] - mean);
    return s / static_cast<double>(x.size() - lag);
  };
  const double at_period = acf(90);
  for (std::size_t lag = 20; lag <= 70; ++lag) CHECK(acf(lag) < at_period);
  CHECK(acf(180) == doctest::Approx(at_period).epsilon(0.01));
}

TEST_CASE("trace round-trip") {
  const auto w = generate_workload(workload_params(0.8, 4), 2);
  const auto content = w.request_stream(5, 9);
  std::stringstream cs;
  write_content_trace(cs, content);
  CHECK(parse_traces(cs, TraceKind::Content).content == content);

  MobilityParams p;
  p.users = 4;
  const auto trace = trace_positions(generate_mobility(p, 3), 10);
  std::vector<MobilityTraceRecord> rows;
  for (std::size_t t = 0; t < trace.size(); ++t)
    for (std::size_t u = 0; u < trace[t].size(); ++u) rows.push_back({u, t, trace[t][u].x, trace[t][u].y});
  std::stringstream ms;
  write_mobility_trace(ms, rows);
  CHECK(parse_traces(ms, TraceKind::Mobility).mobility == rows);
}

TEST_CASE("trace parse errors") {
  std::stringstream empty;
  const auto none = parse_traces(empty, TraceKind::Content);
  CHECK(none.content.empty());

  std::stringstream short_row(std::string(kContentTraceHeader) + "\n0,0,0.1,0.2,0,0,0.5,0.3,0,4\n0,1,0.1,0.2,0,0,0.5,0.3,4\n");
  try {
    parse_traces(short_row, TraceKind::Content);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }

  std::stringstream outside(std::string(kMobilityTraceHeader) + "\n0,0,900,900\n");
  CHECK_THROWS_AS(parse_traces(outside, TraceKind::Mobility, 1000.0), ValidationError);

  std::stringstream bad_number(std::string(kMobilityTraceHeader) + "\n0,0,abc,1\n");
  CHECK_THROWS_AS(parse_traces(bad_number, TraceKind::Mobility), ParseError);
}
