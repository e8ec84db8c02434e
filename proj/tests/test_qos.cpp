#include <doctest.h>

#include <cmath>
#include <vector>

#include "esncache/core/error.hpp"
#include "esncache/core/rng.hpp"
#include "esncache/qos/effective_capacity.hpp"
#include "esncache/qos/link_qos.hpp"
#include "esncache/qos/radio.hpp"

using namespace esncache;

namespace {

WiredParams wired(double l = 1e7) {
  WiredParams w;
  w.content_bits = l;
  w.delay_bound_s = 1.0;
  return w;
}

}  // namespace

TEST_CASE("per-content rate") {
  CHECK(per_content_rate(100e6, 1) == 100e6);
  CHECK(per_content_rate(100e6, 4) == 25e6);
  CHECK(per_content_rate(100e6, 0) == 100e6);
}

TEST_CASE("dBm conversions") {
  CHECK(dbm_to_watt(30.0) == doctest::Approx(1.0));
  CHECK(dbm_to_watt(20.0) == doctest::Approx(0.1));
  CHECK(watt_to_dbm(1e-3) == doctest::Approx(0.0));
}

TEST_CASE("sinr without interferers") {
  const auto radio = LinearRadio::from(RadioParams{});
  std::vector<Point> rrhs{{100, 0}};
  std::vector<char> coop{1};
  std::vector<double> fading{1.0};
  const double g = sinr(radio, {0, 0}, rrhs, 0, coop, fading);
  CHECK(g == doctest::Approx(radio.tx_power_w * std::pow(100.0, -4.0) / radio.noise_power_w));
  CHECK_THROWS_AS(radio.received_power(0.0), GeometryError);
}

TEST_CASE("one equal interferer caps sinr below one") {
  const auto radio = LinearRadio::from(RadioParams{});
  std::vector<Point> rrhs{{100, 0}, {-100, 0}};
  std::vector<char> coop{1, 0};
  std::vector<double> fading{1.0, 1.0};
  const double g = sinr(radio, {0, 0}, rrhs, 0, coop, fading);
  const double s = radio.received_power(100.0);
  CHECK(g == doctest::Approx(s / (s + radio.noise_power_w)));
  CHECK(g < 1.0);
  coop[1] = 1;
  CHECK(sinr(radio, {0, 0}, rrhs, 0, coop, fading) > 1.0);
}

TEST_CASE("doubling distances") {
  const auto radio = LinearRadio::from(RadioParams{});
  CHECK(radio.received_power(200.0) == doctest::Approx(radio.received_power(100.0) / 16.0));
  std::vector<double> fading{1.0, 1.0};
  std::vector<char> alone{1, 0};
  // Noise limited: the interferer is far away.
  std::vector<Point> near{{300, 0}, {1e5, 0}}, far{{600, 0}, {2e5, 0}};
  CHECK(sinr(radio, {0, 0}, far, 0, alone, fading) < sinr(radio, {0, 0}, near, 0, alone, fading));
  // Interference limited: ratio is preserved up to the noise term.
  std::vector<Point> a{{10, 0}, {-12, 0}}, b{{20, 0}, {-24, 0}};
  CHECK(sinr(radio, {0, 0}, b, 0, alone, fading) ==
        doctest::Approx(sinr(radio, {0, 0}, a, 0, alone, fading)).epsilon(1e-3));
}

TEST_CASE("slot capacity") {
  std::vector<double> one{1.0};
  CHECK(slot_capacity(one, 1e6) == doctest::Approx(1e6));
  std::vector<double> zero{0.0};
  CHECK(slot_capacity(zero, 1e6) == 0.0);
  std::vector<double> three{1.0, 3.0, 7.0};
  CHECK(slot_capacity(three, 1e6) == doctest::Approx(6e6));
}

TEST_CASE("path exponents") {
  const auto w = wired();
  CHECK(*path_exponent(0.05, DeliveryPath::Server, w, 40e6) == doctest::Approx(0.1));
  CHECK_FALSE(path_exponent(0.05, DeliveryPath::RemoteRrh, w, 20e6).has_value());
  CHECK(*path_exponent(0.05, DeliveryPath::RrhCache, w, 1.0) == 0.05);

  const auto tiny = wired(1e-6);
  const auto q = map_qos_exponents(0.05, tiny, 1e6, 1e6);
  CHECK(q.theta_A == doctest::Approx(0.05));
  CHECK(q.theta_S == doctest::Approx(0.05));
  CHECK(q.theta_G == doctest::Approx(0.05));
  CHECK_THROWS_AS(map_qos_exponents(0.05, w, 40e6, 20e6), InfeasibleLinkError);

  CHECK(wired_hops(DeliveryPath::RrhCache) == 0);
  CHECK(wired_hops(DeliveryPath::CloudCache) == 1);
  CHECK(wired_hops(DeliveryPath::RemoteRrh) == 2);
  CHECK(wired_hops(DeliveryPath::Server) == 2);
}

TEST_CASE("mapped exponents equalize delay violation") {
  const auto w = wired();
  const auto q = map_qos_exponents(0.05, w, 100e6, 200e6);
  const double target = delay_violation_prob(q.theta_O, 1.0, 0, w.content_bits, 1.0);
  CHECK(delay_violation_prob(q.theta_A, 1.0, 1, w.content_bits, 200e6) == doctest::Approx(target));
  CHECK(delay_violation_prob(q.theta_G, 1.0, 2, w.content_bits, 200e6) == doctest::Approx(target));
  CHECK(delay_violation_prob(q.theta_S, 1.0, 2, w.content_bits, 100e6) == doctest::Approx(target));
  CHECK(q.theta_O <= q.theta_A);
  CHECK(q.theta_A <= q.theta_G);
}

TEST_CASE("delay violation probability") {
  CHECK(delay_violation_prob(0.0, 1.0, 1, 1e7, 1e8) == 1.0);
  CHECK(delay_violation_prob(1e4, 1.0, 1, 1e7, 1e8) < 1e-100);
  CHECK(delay_violation_prob(0.1, 1.0, 1, 5e6, 1e7) == doctest::Approx(std::exp(-0.05)));
  CHECK_THROWS_AS(delay_violation_prob(0.1, 1.0, 2, 1e7, 1e7), InfeasibleLinkError);
}

TEST_CASE("effective capacity of a constant service") {
  std::vector<double> c(8, 42.0);
  for (double theta : {0.0, 1e-6, 0.3, 5.0}) CHECK(effective_capacity(theta, c, 10.0) == doctest::Approx(4.2));
}

TEST_CASE("effective capacity small-theta limit and monotonicity") {
  Rng rng(5);
  std::vector<double> c(5000);
  double mean = 0.0;
  for (auto& v : c) {
    v = 10.0 * rng.exponential();
    mean += v;
  }
  mean /= static_cast<double>(c.size());
  CHECK(effective_capacity(1e-9, c, 2.0) == doctest::Approx(mean / 2.0).epsilon(1e-6));
  double prev = effective_capacity(0.0, c, 2.0);
  for (double theta = 0.01; theta < 3.0; theta *= 1.5) {
    const double e = effective_capacity(theta, c, 2.0);
    CHECK(e <= prev + 1e-12);
    prev = e;
  }
}

TEST_CASE("two-point effective capacity") {
  const double theta = 0.2, cap = 10.0, tau = 1.0;
  const double closed = -std::log2(0.5 * (1.0 + std::exp2(-theta * cap))) / (theta * tau);
  const auto est = effective_capacity(theta, [&](Rng& r) { return r.uniform() < 0.5 ? 0.0 : cap; }, tau, 4000, 3);
  CHECK(std::abs(est.value - closed) <= 3.0 * est.std_error);
  // Huge exponents stay finite through the shifted sum.
  std::vector<double> big{1e6, 2e6};
  CHECK(std::isfinite(effective_capacity(50.0, big, 1.0)));
}

TEST_CASE("aggregates") {
  std::vector<double> zero(4, 0.0), users{3.0, 5.0}, slots{6.0, 9.0, 12.0};
  CHECK(sum_effective_capacity(zero) == 0.0);
  CHECK(sum_effective_capacity(users) == 8.0);
  CHECK(long_term_average(slots) == 9.0);
}
