#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

namespace esncache {

struct WiredParams {
  double backhaul_rate_bps = 2.5e9;   // v_B
  double fronthaul_rate_bps = 5e9;    // v_F
  double content_bits = 1e7;          // L
  double delay_bound_s = 1.0;         // D_max

  void validate() const;
};

// How a requested content reaches the user.
enum class DeliveryPath {
  RrhCache,    // O: serving RRH cache, no wired hop
  CloudCache,  // A: BBU cache over fronthaul
  RemoteRrh,   // G: another RRH's cache, via the BBU
  Server,      // S: content server over backhaul and fronthaul
};

char path_letter(DeliveryPath path);
// Wired hop count N_h.
int wired_hops(DeliveryPath path);

// Per-content share of a pipe; an idle pipe keeps its full rate.
double per_content_rate(double pipe_rate_bps, std::size_t requests);

// theta^O / (1 - N_h L / (v D_max)), or nullopt when the path cannot meet
// the delay bound. `rate_bps` is v_BU for the server path and v_FU
// otherwise; it is ignored for the RRH-cache path.
std::optional<double> path_exponent(double theta_O, DeliveryPath path, const WiredParams& wired,
                                    double rate_bps);

struct LinkQos {
  double theta_O;
  double theta_A;
  double theta_S;
  double theta_G;

  double exponent(DeliveryPath path) const;
};

// Throws InfeasibleLinkError naming the first infeasible path.
LinkQos map_qos_exponents(double theta_O, const WiredParams& wired, double v_BU, double v_FU);

// exp(-theta (D_max - N_h L / v)). Throws InfeasibleLinkError if the wired
// hops alone exceed the delay bound.
double delay_violation_prob(double theta, double delay_bound_s, int hops, double content_bits,
                            double rate_bps);

}  // namespace esncache
