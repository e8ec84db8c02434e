#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <cstdint>
#include <span>

#include "esncache/core/rng.hpp"

namespace esncache {

// Law of the cycle-reservoir weights. Support must lie in (-1, 1).
class WeightDistribution {
 public:
  enum class Kind { PointMass, SymmetricBinary, Uniform };

  static WeightDistribution point_mass(double a);
  // +a or -a with equal probability.
  static WeightDistribution symmetric_binary(double a);
  static WeightDistribution uniform(double lo, double hi);

  Kind kind() const { return kind_; }
  double lo() const { return lo_; }
  double hi() const { return hi_; }
  // The a parameter for PointMass and SymmetricBinary.
  double amplitude() const { return hi_; }

  double sample(Rng& rng) const;
  // E[w^n].
  double moment(unsigned n) const;
  bool zero_mean() const;
  bool strictly_positive() const;

 private:
  WeightDistribution(Kind kind, double lo, double hi) : kind_(kind), lo_(lo), hi_(hi) {}

  Kind kind_;
  double lo_;
  double hi_;
};

// W x W matrix with row i holding a weight in column (i - 1) mod W.
Eigen::SparseMatrix<double> build_cycle_reservoir(std::size_t w, const WeightDistribution& spec,
                                                  std::uint64_t seed);

// Reservoir states as columns (W x N_tr) and matching targets (N_s x N_tr).
struct TrainingWindow {
  Eigen::MatrixXd states;
  Eigen::MatrixXd targets;
};

// Ridge readout: W_out = S V^T (V V^T + lambda^2 I)^{-1}, solved through a
// Cholesky factorization of the Gram matrix.
Eigen::MatrixXd ridge_train(const TrainingWindow& window, double ridge_lambda);

// Per-user linear cycle-reservoir predictor over scalar location codes.
class MobilityEsn {
 public:
  MobilityEsn(std::size_t reservoir_size, std::size_t horizon, const WeightDistribution& spec,
              double ridge_lambda, std::uint64_t seed);
  MobilityEsn(Eigen::VectorXd input_weights, Eigen::SparseMatrix<double> reservoir,
              std::size_t horizon, double ridge_lambda);

  // state <- W * state + W_in * m
  const Eigen::VectorXd& update_state(double m);
  // N_s future codes, W_out * state.
  Eigen::VectorXd predict() const;
  void train(const TrainingWindow& window);

  // Replays `codes` from a zero state, fits the readout on states after
  // `washout` steps (optionally only the last `max_window` of them) and
  // leaves the state at the end of the sequence. Returns the number of
  // training columns; zero means the sequence was too short and the readout
  // is unchanged.
  std::size_t fit_sequence(std::span<const double> codes, std::size_t washout,
                           std::size_t max_window = 0);

  void reset_state() { state_.setZero(); }
  void set_output_weights(Eigen::MatrixXd weights);

  const Eigen::VectorXd& state() const { return state_; }
  const Eigen::VectorXd& input_weights() const { return input_weights_; }
  const Eigen::SparseMatrix<double>& reservoir() const { return reservoir_; }
  const Eigen::MatrixXd& output_weights() const { return output_weights_; }
  std::size_t reservoir_size() const { return static_cast<std::size_t>(state_.size()); }
  std::size_t horizon() const { return horizon_; }
  double ridge_lambda() const { return ridge_lambda_; }

 private:
  Eigen::VectorXd input_weights_;
  Eigen::SparseMatrix<double> reservoir_;
  Eigen::MatrixXd output_weights_;
  Eigen::VectorXd state_;
  std::size_t horizon_;
  double ridge_lambda_;
};

// Analytic memory capacity of a cycle reservoir with i.i.d. weights.
double memory_capacity(const WeightDistribution& spec, std::size_t w, double series_tol = 1e-12);

// The defining series evaluated term by term from the moments of `spec`,
// truncated once every remaining term is below `series_tol`.
double memory_capacity_series(const WeightDistribution& spec, std::size_t w,
                              double series_tol = 1e-12);

struct CapacityBounds {
  double lo;
  double hi;
  bool lo_inclusive;  // zero-mean family: 0 <= M; positive family: 0 < M
};

CapacityBounds memory_capacity_bounds(const WeightDistribution& spec, std::size_t w);

// Measures memory capacity by fitting one least-squares readout per delay
// k >= 1 to reconstruct the delayed input and summing the squared
// correlations. The input is zero-mean, unit-variance and periodic in law
// with period `input_period`.
double empirical_memory_capacity(const MobilityEsn& esn, std::size_t input_period,
                                 std::size_t trace_len, std::uint64_t seed);

}  // namespace esncache
