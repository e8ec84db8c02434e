#include "esncache/qos/link_qos.hpp"

#include <cmath>
#include <string>

#include "esncache/core/error.hpp"

namespace esncache {

void WiredParams::validate() const {
  if (!(backhaul_rate_bps > 0.0)) throw ConfigError("v_B must be positive");
  if (!(fronthaul_rate_bps > 0.0)) throw ConfigError("v_F must be positive");
  if (!(content_bits > 0.0)) throw ConfigError("L must be positive");
  if (!(delay_bound_s > 0.0)) throw ConfigError("D_max must be positive");
}

char path_letter(DeliveryPath path) {
  switch (path) {
    case DeliveryPath::RrhCache:
      return 'O';
    case DeliveryPath::CloudCache:
      return 'A';
    case DeliveryPath::RemoteRrh:
      return 'G';
    case DeliveryPath::Server:
      return 'S';
  }
  return '?';
}

int wired_hops(DeliveryPath path) {
  switch (path) {
    case DeliveryPath::RrhCache:
      return 0;
    case DeliveryPath::CloudCache:
      return 1;
    case DeliveryPath::RemoteRrh:
    case DeliveryPath::Server:
      return 2;
  }
  return 0;
}

double per_content_rate(double pipe_rate_bps, std::size_t requests) {
  return requests == 0 ? pipe_rate_bps : pipe_rate_bps / static_cast<double>(requests);
}

std::optional<double> path_exponent(double theta_O, DeliveryPath path, const WiredParams& wired,
                                    double rate_bps) {
  const int hops = wired_hops(path);
  if (hops == 0) return theta_O;
  if (!(rate_bps > 0.0)) return std::nullopt;
  const double denom = 1.0 - hops * wired.content_bits / (rate_bps * wired.delay_bound_s);
  if (!(denom > 0.0)) return std::nullopt;
  return theta_O / denom;
}

double LinkQos::exponent(DeliveryPath path) const {
  switch (path) {
    case DeliveryPath::RrhCache:
      return theta_O;
    case DeliveryPath::CloudCache:
      return theta_A;
    case DeliveryPath::RemoteRrh:
      return theta_G;
    case DeliveryPath::Server:
      return theta_S;
  }
  return theta_O;
}

LinkQos map_qos_exponents(double theta_O, const WiredParams& wired, double v_BU, double v_FU) {
  wired.validate();
  if (!(theta_O > 0.0)) throw ConfigError("theta_O must be positive");
  auto require = [&](DeliveryPath path, double rate) {
    const auto theta = path_exponent(theta_O, path, wired, rate);
    if (!theta)
      throw InfeasibleLinkError(std::string("path ") + path_letter(path) +
                                " cannot meet the delay bound at the given wired rate");
    return *theta;
  };
  return {theta_O, require(DeliveryPath::CloudCache, v_FU), require(DeliveryPath::Server, v_BU),
          require(DeliveryPath::RemoteRrh, v_FU)};
}

double delay_violation_prob(double theta, double delay_bound_s, int hops, double content_bits,
                            double rate_bps) {
  const double wired_delay = hops == 0 ? 0.0 : hops * content_bits / rate_bps;
  const double slack = delay_bound_s - wired_delay;
  if (!(slack > 0.0)) throw InfeasibleLinkError("wired hops alone exceed the delay bound");
  if (std::isinf(theta)) return 0.0;
  return std::exp(-theta * slack);
}

}  // namespace esncache
