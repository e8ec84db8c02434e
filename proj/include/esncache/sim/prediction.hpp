#pragma once

#include <cstddef>
#include <cstdint>

#include "esncache/sim/config.hpp"
#include "esncache/sim/world.hpp"

namespace esncache {

struct MobilityAccuracy {
  std::size_t predictions = 0;
  double position_error_m = 0.0;  // mean distance, predicted to true sample
  double cell_accuracy = 0.0;     // predicted grid cell equals the true one
  double serving_accuracy = 0.0;  // nearest RRH of the prediction is the true one
};

// Scores the mobility ESN alone. At the start of every cloud period after
// warmup each user's readout is refit on its sample history and the next
// N_s samples are predicted and compared with the true ones.
MobilityAccuracy evaluate_mobility_prediction(const SimConfig& cfg, std::uint64_t seed,
                                              const ExternalTraces& traces = {});

}  // namespace esncache
