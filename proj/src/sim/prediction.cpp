#include "esncache/sim/prediction.hpp"

#include <vector>

#include "esncache/core/rng.hpp"
#include "esncache/esn/mobility_esn.hpp"

namespace esncache {

MobilityAccuracy evaluate_mobility_prediction(const SimConfig& cfg, std::uint64_t seed,
                                              const ExternalTraces& traces) {
  const World world = build_world(cfg, seed, traces);
  const std::size_t U = cfg.users, H = cfg.mobility_period;
  const std::size_t end = cfg.warmup_slots + cfg.slots;

  std::vector<MobilityEsn> esn;
  esn.reserve(U);
  for (std::size_t i = 0; i < U; ++i)
    esn.emplace_back(cfg.cycle_units, cfg.horizon, cfg.cycle_weights(), cfg.ridge_lambda,
                     derive_seed(seed, "mobility-esn", i));
  std::vector<std::vector<double>> history(U);

  MobilityAccuracy acc;
  for (std::size_t g = 0; g < end; ++g) {
    if (g % H == 0)
      for (std::size_t i = 0; i < U; ++i)
        history[i].push_back(static_cast<double>(world.grid.encode(world.positions[g][i])));
    if (g < cfg.warmup_slots || (g - cfg.warmup_slots) % cfg.cloud_period != 0) continue;
    for (std::size_t i = 0; i < U; ++i) {
      if (esn[i].fit_sequence(history[i], cfg.cycle_units, cfg.training_window) == 0) continue;
      const Eigen::VectorXd codes = esn[i].predict();
      for (std::size_t j = 1; j <= cfg.horizon && g + j * H <= end; ++j) {
        const Point truth = world.positions[g + j * H][i];
        const std::size_t cell = world.grid.snap(codes(static_cast<Eigen::Index>(j - 1)));
        const Point guess = world.grid.decode(cell);
        ++acc.predictions;
        acc.position_error_m += distance(guess, truth);
        acc.cell_accuracy += cell == world.grid.encode(truth) ? 1.0 : 0.0;
        acc.serving_accuracy += nearest(guess, world.rrhs) == nearest(truth, world.rrhs) ? 1.0 : 0.0;
      }
    }
  }
  if (acc.predictions > 0) {
    const double n = static_cast<double>(acc.predictions);
    acc.position_error_m /= n;
    acc.cell_accuracy /= n;
    acc.serving_accuracy /= n;
  }
  return acc;
}

}  // namespace esncache
