#include <doctest.h>

#include <cmath>

#include "esncache/core/error.hpp"
#include "esncache/esn/mobility_esn.hpp"

using namespace esncache;

TEST_CASE("closed forms for the two point families") {
  CHECK(memory_capacity(WeightDistribution::point_mass(0.9), 10) ==
        doctest::Approx(9.12158).epsilon(1e-6));
  CHECK(memory_capacity(WeightDistribution::symmetric_binary(0.9), 10) ==
        doctest::Approx(5.12158).epsilon(1e-6));
  CHECK(memory_capacity(WeightDistribution::point_mass(0.8), 5) ==
        doctest::Approx(4.10737).epsilon(1e-6));
  CHECK(memory_capacity(WeightDistribution::point_mass(0.9999), 12) == doctest::Approx(12.0).epsilon(1e-3));
}

TEST_CASE("series agrees with the closed form for the point mass") {
  for (double a : {0.2, 0.5, 0.8}) {
    for (std::size_t w : {1u, 3u, 8u}) {
      const auto spec = WeightDistribution::point_mass(a);
      CHECK(memory_capacity_series(spec, w) == doctest::Approx(memory_capacity(spec, w)).epsilon(1e-9));
    }
  }
}

TEST_CASE("capacity bounds") {
  const auto b = memory_capacity_bounds(WeightDistribution::symmetric_binary(0.4), 10);
  CHECK(b.lo == 0.0);
  CHECK(b.hi == 6.0);
  CHECK(b.lo_inclusive);
  const auto p = memory_capacity_bounds(WeightDistribution::point_mass(0.5), 8);
  CHECK(p.lo == 0.0);
  CHECK(p.hi == 8.0);
  CHECK_FALSE(p.lo_inclusive);
  const double m = memory_capacity(WeightDistribution::symmetric_binary(0.9), 10);
  CHECK(m > b.lo);
  CHECK(m < b.hi);
}

TEST_CASE("uniform law outside both bound families is rejected") {
  CHECK_THROWS_AS(memory_capacity_bounds(WeightDistribution::uniform(-0.2, 0.6), 5), UnsupportedFamilyError);
}

TEST_CASE("empirical capacity") {
  MobilityEsn forgetful(Eigen::VectorXd::Ones(5), build_cycle_reservoir(5, WeightDistribution::point_mass(0.0), 1),
                        1, 0.0);
  CHECK(empirical_memory_capacity(forgetful, 5, 4000, 1) < 0.05);

  MobilityEsn pm(5, 1, WeightDistribution::point_mass(0.8), 0.0, 7);
  const double measured = empirical_memory_capacity(pm, 5, 20000, 7);
  CHECK(std::abs(measured - 4.10737) <= 0.15);

  for (auto spec : {WeightDistribution::point_mass(0.95), WeightDistribution::symmetric_binary(0.7),
                    WeightDistribution::uniform(0.1, 0.9)}) {
    MobilityEsn esn(6, 1, spec, 0.0, 3);
    CHECK(empirical_memory_capacity(esn, 6, 6000, 3) <= 6.2);
  }
}
