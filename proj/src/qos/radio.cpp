#include "esncache/qos/radio.hpp"

#include <cmath>

#include "esncache/core/error.hpp"

namespace esncache {

double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double watt_to_dbm(double watt) { return 10.0 * std::log10(watt) + 30.0; }

void RadioParams::validate() const {
  if (!std::isfinite(tx_power_dbm)) throw ConfigError("P must be finite");
  if (!(pathloss_exponent > 2.0)) throw ConfigError("beta must exceed 2");
  if (!std::isfinite(noise_power_dbm)) throw ConfigError("sigma2 must be finite");
  if (!(bandwidth_hz > 0.0)) throw ConfigError("B must be positive");
  if (!(cell_radius_m > 0.0)) throw ConfigError("r must be positive");
}

LinearRadio LinearRadio::from(const RadioParams& params) {
  params.validate();
  return {dbm_to_watt(params.tx_power_dbm), dbm_to_watt(params.noise_power_dbm),
          params.pathloss_exponent, params.bandwidth_hz};
}

double LinearRadio::received_power(double d) const {
  if (!(d > 0.0)) throw GeometryError("zero distance between user and RRH");
  if (pathloss_exponent == 4.0) {
    const double d2 = d * d;
    return tx_power_w / (d2 * d2);
  }
  return tx_power_w * std::pow(d, -pathloss_exponent);
}

double sinr(const LinearRadio& radio, Point user, std::span<const Point> rrhs, std::size_t serving,
            std::span<const char> cooperating, std::span<const double> fading) {
  if (serving >= rrhs.size()) throw GeometryError("serving RRH index out of range");
  if (cooperating.size() != rrhs.size() || fading.size() != rrhs.size())
    throw ConfigError("sinr: per-RRH inputs must match the RRH count");
  if (!cooperating[serving]) throw ConfigError("sinr: serving RRH must be in the user's cluster");
  const double signal = radio.received_power(distance(user, rrhs[serving])) * fading[serving];
  double interference = 0.0;
  for (std::size_t j = 0; j < rrhs.size(); ++j) {
    if (cooperating[j]) continue;
    interference += radio.received_power(distance(user, rrhs[j])) * fading[j];
  }
  return signal / (interference + radio.noise_power_w);
}

double link_capacity(double gamma, double bandwidth_hz) { return bandwidth_hz * std::log2(1.0 + gamma); }

double slot_capacity(std::span<const double> gammas, double bandwidth_hz) {
  if (gammas.empty()) throw ConfigError("slot capacity needs at least one sub-step");
  double total = 0.0;
  for (double g : gammas) total += link_capacity(g, bandwidth_hz);
  return total;
}

}  // namespace esncache
