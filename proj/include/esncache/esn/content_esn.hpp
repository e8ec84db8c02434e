#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <cstdint>

#include "esncache/esn/distribution.hpp"

namespace esncache {

struct ContentEsnConfig {
  std::size_t reservoir_size = 1000;  // N_w
  std::size_t context_dim = ContextVector::kDefaultDim;
  std::size_t num_contents = 50;  // N
  double learning_rate = 0.01;    // lambda^alpha
  double spectral_radius = 0.9;
  double density = 0.1;
  double input_scaling = 0.1;

  void validate() const;
};

// Per-user demand predictor: tanh reservoir driven by the context vector with
// a linear readout trained online by LMS.
class ContentEsn {
 public:
  ContentEsn(const ContentEsnConfig& config, std::uint64_t seed);
  ContentEsn(Eigen::MatrixXd input_weights, Eigen::SparseMatrix<double> reservoir,
             Eigen::MatrixXd output_weights, double learning_rate);

  // state <- tanh(W * state + W_in * x)
  const Eigen::VectorXd& update_state(const ContextVector& x);
  Eigen::VectorXd raw_output(const ContextVector& x) const;
  ContentDistribution predict(const ContextVector& x) const;
  // LMS step on the raw output. Returns the L1 distance between `observed`
  // and the projected prediction made before the step.
  double train_step(const ContextVector& x, const ContentDistribution& observed);

  void reset_state() { state_.setZero(); }
  void set_state(const Eigen::VectorXd& state);

  const Eigen::VectorXd& state() const { return state_; }
  const Eigen::MatrixXd& input_weights() const { return input_weights_; }
  const Eigen::SparseMatrix<double>& reservoir() const { return reservoir_; }
  const Eigen::MatrixXd& output_weights() const { return output_weights_; }
  double learning_rate() const { return learning_rate_; }
  std::size_t reservoir_size() const { return static_cast<std::size_t>(state_.size()); }
  std::size_t context_dim() const { return static_cast<std::size_t>(input_weights_.cols()); }
  std::size_t num_contents() const { return static_cast<std::size_t>(output_weights_.rows()); }

 private:
  void check_context(const ContextVector& x) const;
  Eigen::VectorXd features(const ContextVector& x) const;

  Eigen::MatrixXd input_weights_;
  Eigen::SparseMatrix<double> reservoir_;
  Eigen::MatrixXd output_weights_;
  Eigen::VectorXd state_;
  double learning_rate_;
};

// Random sparse reservoir: uniform(-1, 1) entries on a `density` mask,
// rescaled to the requested spectral radius.
Eigen::SparseMatrix<double> random_sparse_reservoir(std::size_t n, double density,
                                                    double spectral_radius, std::uint64_t seed);

// Spectral radius. Exact (dense eigenvalues) up to 512 units, otherwise a
// power-norm estimate.
double spectral_radius(const Eigen::SparseMatrix<double>& m);

}  // namespace esncache
