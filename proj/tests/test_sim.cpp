#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "esncache/core/error.hpp"
#include "esncache/core/rng.hpp"
#include "esncache/sim/channel.hpp"
#include "esncache/sim/config.hpp"
#include "esncache/sim/episode.hpp"
#include "esncache/sim/oracle.hpp"
#include "esncache/sim/world.hpp"

using namespace esncache;

namespace {

using Sizes = std::vector<std::size_t>;

SimConfig tiny_config() {
  SimConfig cfg;
  cfg.rrhs = 3;
  cfg.users = 4;
  cfg.catalog_size = 6;
  cfg.cloud_capacity = 2;
  cfg.rrh_capacity = 1;
  cfg.slots = 30;
  cfg.cloud_period = 15;
  cfg.warmup_slots = 30;
  cfg.reservoir_units = 40;
  cfg.n_mc = 8;
  return cfg;
}

OracleSlot random_slot(Rng& rng, std::size_t users, std::size_t rrhs, std::size_t n) {
  OracleSlot s;
  for (std::size_t i = 0; i < users; ++i) {
    s.serving.push_back(rng.index(rrhs));
    Eigen::VectorXd p(static_cast<Eigen::Index>(n));
    for (auto& v : p) v = rng.exponential();
    s.demand.push_back(p / p.sum());
    const double a = rng.uniform(1.0, 5.0);
    s.a.push_back(a);
    s.c.push_back(a * rng.uniform(0.3, 1.0));
  }
  return s;
}

Sizes random_subset(Rng& rng, std::size_t n, std::size_t k) {
  Sizes all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  for (std::size_t i = 0; i < k; ++i) std::swap(all[i], all[i + rng.index(n - i)]);
  Sizes out(all.begin(), all.begin() + static_cast<long>(k));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("fading draws are addressable and unit mean") {
  CHECK(fading_draw(5, 9) == fading_draw(5, 9));
  CHECK(fading_draw(5, 9) != fading_draw(5, 10));
  double sum = 0.0;
  for (std::uint64_t c = 0; c < 100000; ++c) sum += fading_draw(77, c);
  CHECK(sum / 1e5 == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("cooperation and idle RRHs never lower capacity") {
  SimConfig cfg = tiny_config();
  std::vector<Point> rrhs{{0, 0}, {150, 0}, {-150, 0}};
  ChannelModel ch(cfg, rrhs);
  std::vector<double> alone(8), clustered(8), idle(8);
  const Sizes all{0, 1, 2}, self{0}, pair{0, 1};
  ch.capacity_draws({20, 0}, {30, 0}, 0, self, all, 4, alone);
  ch.capacity_draws({20, 0}, {30, 0}, 0, pair, all, 4, clustered);
  ch.capacity_draws({20, 0}, {30, 0}, 0, self, pair, 4, idle);
  for (std::size_t m = 0; m < 8; ++m) {
    CHECK(clustered[m] >= alone[m]);
    CHECK(idle[m] >= alone[m]);
    CHECK(alone[m] > 0.0);
  }
  CHECK(ch.tau() == 10.0);
}

TEST_CASE("RRH layouts nest") {
  const auto small = place_rrhs(8, 1000.0, 3);
  const auto large = place_rrhs(64, 1000.0, 3);
  for (std::size_t i = 0; i < small.size(); ++i) CHECK(small[i] == large[i]);
  for (const auto& p : large) CHECK(std::hypot(p.x, p.y) <= 1000.0);
}

TEST_CASE("oracle search size and guard") {
  CHECK(oracle_search_size(6, 2, 1, 3) == doctest::Approx(15.0 * 216.0));
  Rng rng(1);
  std::vector<OracleSlot> period{random_slot(rng, 4, 3, 6)};
  CHECK_THROWS_AS(solve_oracle(period, 3, 6, 2, 1, OracleScope::Joint, 100.0), InstanceTooLargeError);
}

TEST_CASE("best subset prefers the lexicographically first optimum") {
  std::vector<double> s{0.2, 0.5, 0.2, 0.5};
  CHECK(best_subset(s, 1) == Sizes{1});
  CHECK(best_subset(s, 3) == Sizes{0, 1, 3});
}

TEST_CASE("joint planning beats per-RRH planning when caches overlap") {
  Eigen::VectorXd p0(3), p1(3);
  p0 << 0.6, 0.4, 0.0;
  p1 << 0.6, 0.0, 0.4;
  const OracleSlot slot{{0, 1}, {p0, p1}, {1.0, 1.0}, {0.9, 0.9}};
  std::vector<OracleSlot> period{slot};
  const auto h = solve_oracle(period, 2, 3, 1, 1, OracleScope::Hierarchical, 1e6);
  const auto j = solve_oracle(period, 2, 3, 1, 1, OracleScope::Joint, 1e6);
  CHECK(h.objective == doctest::Approx(1.56));
  CHECK(j.objective == doctest::Approx(1.88));
  CHECK(j.cloud == Sizes{0});
  CHECK(j.rrh[0][0] == Sizes{1});
  CHECK(j.rrh[0][1] == Sizes{2});
  CHECK(planned_objective(slot, j.cloud, j.rrh[0]) == doctest::Approx(j.objective));
}

TEST_CASE("exhaustive plan dominates any other cache choice") {
  Rng rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 4 + rng.index(3), r = 1 + rng.index(2), u = 2 + rng.index(3);
    std::vector<OracleSlot> period;
    for (int o = 0; o < 2; ++o) period.push_back(random_slot(rng, u, r, n));
    const auto joint = solve_oracle(period, r, n, 2, 1, OracleScope::Joint, 1e6);
    const auto hier = solve_oracle(period, r, n, 2, 1, OracleScope::Hierarchical, 1e6);
    CHECK(joint.objective >= hier.objective - 1e-12);
    for (int k = 0; k < 5; ++k) {
      const auto cloud = random_subset(rng, n, 2);
      double other = 0.0;
      for (const auto& s : period) {
        std::vector<Sizes> caches;
        for (std::size_t j = 0; j < r; ++j) caches.push_back(random_subset(rng, n, 1));
        other += planned_objective(s, cloud, caches);
      }
      CHECK(joint.objective >= other - 1e-12);
    }
  }
}

TEST_CASE("policy names round-trip") {
  for (auto p : {Policy::Proposed, Policy::RandomClustered, Policy::RandomUnclustered, Policy::Oracle})
    CHECK(parse_policy(policy_name(p)) == p);
  CHECK_THROWS_AS(parse_policy("greedy"), ConfigError);
}

TEST_CASE("episodes are deterministic") {
  auto cfg = tiny_config();
  const Policy policies[] = {Policy::Proposed, Policy::RandomClustered};
  const auto a = run_episodes(cfg, policies, 4);
  const auto b = run_episodes(cfg, policies, 4);
  REQUIRE(a.size() == 2);
  for (std::size_t p = 0; p < 2; ++p) {
    CHECK(a[p].mean_capacity == b[p].mean_capacity);
    CHECK(a[p].cloud_trace == b[p].cloud_trace);
    REQUIRE(a[p].slots.size() == 30);
    for (std::size_t k = 0; k < 30; ++k) CHECK(a[p].slots[k].sum_capacity == b[p].slots[k].sum_capacity);
  }
  CHECK(std::isnan(a[0].mean_planned));
}

TEST_CASE("random baselines share caches and differ only in interference") {
  auto cfg = tiny_config();
  const Policy policies[] = {Policy::RandomClustered, Policy::RandomUnclustered};
  const auto r = run_episodes(cfg, policies, 9);
  CHECK(r[0].cloud_trace == r[1].cloud_trace);
  for (std::size_t k = 0; k < r[0].slots.size(); ++k) {
    CHECK(r[0].slots[k].hit_rrh == r[1].slots[k].hit_rrh);
    CHECK(r[0].slots[k].miss == r[1].slots[k].miss);
  }
}

TEST_CASE("no caches send every request to the server") {
  auto cfg = tiny_config();
  cfg.cloud_capacity = 0;
  cfg.rrh_capacity = 0;
  const auto r = run_episode(cfg, Policy::Proposed, 1);
  for (const auto& s : r.slots) {
    CHECK(s.miss == 1.0);
    CHECK(s.backhaul_load == cfg.users);
    CHECK(s.fronthaul_load == cfg.users);
  }
}

TEST_CASE("caching the whole catalog keeps every request local") {
  auto cfg = tiny_config();
  cfg.rrh_capacity = cfg.catalog_size;
  const auto r = run_episode(cfg, Policy::Proposed, 2);
  for (const auto& s : r.slots) {
    CHECK(s.hit_rrh == 1.0);
    CHECK(s.backhaul_load == 0);
    CHECK(s.fronthaul_load == 0);
    CHECK(s.infeasible == 0);
  }
}

TEST_CASE("with true predictions the proposed caches match the exhaustive plan") {
  auto cfg = tiny_config();
  cfg.oracle_predictions = true;
  const Policy policies[] = {Policy::Proposed, Policy::Oracle};
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const auto r = run_episodes(cfg, policies, seed);
    CHECK(r[0].mean_capacity == doctest::Approx(r[1].mean_capacity).epsilon(1e-12));
    CHECK(r[0].mean_planned == doctest::Approx(r[1].mean_planned).epsilon(1e-12));
  }
}

TEST_CASE("oracle guard") {
  auto cfg = tiny_config();
  cfg.oracle_limit = 10.0;
  CHECK_THROWS_AS(run_episode(cfg, Policy::Oracle, 1), InstanceTooLargeError);
  cfg.users = 0;
  CHECK_THROWS_AS(run_episode(cfg, Policy::Proposed, 1), ConfigError);
}
