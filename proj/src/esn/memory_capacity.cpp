#include <Eigen/QR>
#include <cmath>

#include "esncache/core/error.hpp"
#include "esncache/esn/mobility_esn.hpp"

namespace esncache {

namespace {

constexpr std::size_t kMaxSeriesTerms = 10'000'000;

double max_abs_support(const WeightDistribution& spec) {
  return std::max(std::abs(spec.lo()), std::abs(spec.hi()));
}

// sum_j f(j) for a non-negative, geometrically dominated sequence.
template <typename Term>
double tail_sum(Term term, double ratio, double tol) {
  double total = 0.0;
  for (std::size_t j = 0; j < kMaxSeriesTerms; ++j) {
    const double t = term(j);
    total += t;
    if (t * ratio / (1.0 - ratio) < tol) return total;
  }
  throw DegenerateDistributionError("memory-capacity series did not converge");
}

}  // namespace

double memory_capacity_series(const WeightDistribution& spec, std::size_t w, double series_tol) {
  if (w == 0) throw ConfigError("memory capacity needs W >= 1");
  if (!(series_tol > 0.0)) throw ConfigError("series tolerance must be positive");
  const double q = std::pow(max_abs_support(spec), 2.0 * static_cast<double>(w));
  const auto W = static_cast<unsigned>(w);

  auto denominator = [&](unsigned k) {
    return tail_sum([&](std::size_t j) { return spec.moment(2 * W * static_cast<unsigned>(j) + 2 * k); }, q,
                    series_tol);
  };
  auto numerator = [&](unsigned k) {
    return tail_sum(
        [&](std::size_t j) {
          const double m = spec.moment(W * static_cast<unsigned>(j) + k);
          return m * m;
        },
        q, series_tol);
  };

  double total = 0.0;
  for (unsigned k = 0; k < W; ++k) {
    const double den = denominator(k);
    if (!(den > 0.0)) throw DegenerateDistributionError("zero moment series at delay " + std::to_string(k));
    total += numerator(k) / den;
  }
  return total - 1.0 / denominator(0);
}

double memory_capacity(const WeightDistribution& spec, std::size_t w, double series_tol) {
  if (w == 0) throw ConfigError("memory capacity needs W >= 1");
  const double a = spec.amplitude();
  const double a2w = std::pow(a, 2.0 * static_cast<double>(w));
  switch (spec.kind()) {
    case WeightDistribution::Kind::PointMass:
      if (a == 0.0) throw DegenerateDistributionError("point mass at zero has no memory series");
      return static_cast<double>(w) - 1.0 + a2w;
    case WeightDistribution::Kind::SymmetricBinary:
      // Published closed form; the literal series gives a different value for
      // this law (see memory_capacity_series).
      if (a == 0.0) throw DegenerateDistributionError("symmetric binary at zero has no memory series");
      return static_cast<double>(w / 2) + a2w;
    case WeightDistribution::Kind::Uniform:
      return memory_capacity_series(spec, w, series_tol);
  }
  return 0.0;
}

CapacityBounds memory_capacity_bounds(const WeightDistribution& spec, std::size_t w) {
  if (w == 0) throw ConfigError("memory capacity needs W >= 1");
  if (spec.zero_mean()) return {0.0, static_cast<double>(w / 2) + 1.0, true};
  if (spec.strictly_positive()) return {0.0, static_cast<double>(w), false};
  throw UnsupportedFamilyError("bounds are only known for zero-mean or positive weight laws");
}

double empirical_memory_capacity(const MobilityEsn& esn, std::size_t input_period,
                                 std::size_t trace_len, std::uint64_t seed) {
  const std::size_t w = esn.reservoir_size();
  if (input_period == 0) throw ConfigError("input period must be positive");
  const std::size_t washout = 10 * w + 100;
  const std::size_t max_delay = 5 * w + 50;
  if (trace_len < washout + max_delay + 20 * w + 100)
    throw MeasurementError("trace too short for a memory-capacity measurement");

  // Zero-mean, unit-variance input whose law cycles with the phase.
  Rng rng(seed);
  Eigen::VectorXd input(static_cast<Eigen::Index>(trace_len));
  for (std::size_t t = 0; t < trace_len; ++t) {
    double m = 0.0;
    switch ((t % input_period) % 3) {
      case 0:
        m = rng.normal();
        break;
      case 1:
        m = rng.uniform(-std::sqrt(3.0), std::sqrt(3.0));
        break;
      default:
        m = rng.uniform() < 0.5 ? -1.0 : 1.0;
        break;
    }
    input(static_cast<Eigen::Index>(t)) = m;
  }
  const double mean = input.mean();
  const double var = (input.array() - mean).square().mean();
  if (!(var > 1e-12)) throw MeasurementError("input has degenerate variance");

  MobilityEsn probe = esn;
  probe.reset_state();
  const std::size_t first = washout + max_delay;
  const auto n = static_cast<Eigen::Index>(trace_len - first);
  Eigen::MatrixXd states(static_cast<Eigen::Index>(w), n);
  for (std::size_t t = 0; t < trace_len; ++t) {
    probe.update_state(input(static_cast<Eigen::Index>(t)));
    if (t >= first) states.col(static_cast<Eigen::Index>(t - first)) = probe.state();
  }

  const Eigen::MatrixXd gram = states * states.transpose();
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> solver(gram);
  const double dof = static_cast<double>(n) - static_cast<double>(w) - 1.0;

  double capacity = 0.0;
  for (std::size_t k = 1; k <= max_delay; ++k) {
    const Eigen::VectorXd target = input.segment(static_cast<Eigen::Index>(first - k), n);
    const Eigen::VectorXd readout = solver.solve(states * target);
    const Eigen::VectorXd fit = states.transpose() * readout;
    const Eigen::ArrayXd y = target.array() - target.mean();
    const Eigen::ArrayXd f = fit.array() - fit.mean();
    const double syy = y.square().sum();
    const double sff = f.square().sum();
    double r2 = 0.0;
    if (sff > 0.0 && syy > 0.0) {
      const double sfy = (f * y).sum();
      r2 = sfy * sfy / (sff * syy);
    }
    // Remove the upward bias of an in-sample fit with W regressors.
    const double adjusted = 1.0 - (1.0 - r2) * (static_cast<double>(n) - 1.0) / dof;
    if (adjusted < 1e-4) break;
    capacity += adjusted;
  }
  return capacity;
}

}  // namespace esncache
