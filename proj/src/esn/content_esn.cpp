#include "esncache/esn/content_esn.hpp"

#include "esncache/core/error.hpp"
#include "esncache/core/rng.hpp"

namespace esncache {

void ContentEsnConfig::validate() const {
  if (reservoir_size == 0) throw ConfigError("N_w must be positive");
  if (context_dim == 0) throw ConfigError("K must be positive");
  if (num_contents == 0) throw ConfigError("N must be positive");
  if (!(learning_rate > 0.0)) throw ConfigError("lambda_alpha must be positive");
  if (!(spectral_radius > 0.0 && spectral_radius < 1.0))
    throw ConfigError("spectral radius must be in (0, 1)");
  if (!(density > 0.0 && density <= 1.0)) throw ConfigError("reservoir density must be in (0, 1]");
  if (!(input_scaling > 0.0)) throw ConfigError("input scaling must be positive");
}

ContentEsn::ContentEsn(const ContentEsnConfig& config, std::uint64_t seed) {
  config.validate();
  const auto nw = static_cast<Eigen::Index>(config.reservoir_size);
  const auto k = static_cast<Eigen::Index>(config.context_dim);
  const auto n = static_cast<Eigen::Index>(config.num_contents);

  reservoir_ = random_sparse_reservoir(config.reservoir_size, config.density, config.spectral_radius,
                                       derive_seed(seed, "reservoir"));
  Rng rng(derive_seed(seed, "input"));
  input_weights_.resize(nw, k);
  for (Eigen::Index j = 0; j < k; ++j)
    for (Eigen::Index i = 0; i < nw; ++i)
      input_weights_(i, j) = rng.uniform(-config.input_scaling, config.input_scaling);

  // Small positive readout so the first projected prediction is near uniform.
  Rng out_rng(derive_seed(seed, "output"));
  const double scale = 1.0 / static_cast<double>(nw + k);
  output_weights_.resize(n, nw + k);
  for (Eigen::Index j = 0; j < nw + k; ++j)
    for (Eigen::Index i = 0; i < n; ++i) output_weights_(i, j) = out_rng.uniform(0.0, scale);

  state_ = Eigen::VectorXd::Zero(nw);
  learning_rate_ = config.learning_rate;
}

ContentEsn::ContentEsn(Eigen::MatrixXd input_weights, Eigen::SparseMatrix<double> reservoir,
                       Eigen::MatrixXd output_weights, double learning_rate)
    : input_weights_(std::move(input_weights)),
      reservoir_(std::move(reservoir)),
      output_weights_(std::move(output_weights)),
      learning_rate_(learning_rate) {
  const Eigen::Index nw = input_weights_.rows();
  if (nw == 0 || input_weights_.cols() == 0) throw ConfigError("empty input weights");
  if (reservoir_.rows() != nw || reservoir_.cols() != nw)
    throw ConfigError("reservoir must be N_w x N_w");
  if (output_weights_.rows() == 0 || output_weights_.cols() != nw + input_weights_.cols())
    throw ConfigError("output weights must have N_w + K columns");
  if (!(learning_rate_ > 0.0)) throw ConfigError("learning rate must be positive");
  state_ = Eigen::VectorXd::Zero(nw);
}

void ContentEsn::check_context(const ContextVector& x) const {
  if (static_cast<Eigen::Index>(x.size()) != input_weights_.cols())
    throw ConfigError("context vector has " + std::to_string(x.size()) + " entries, expected " +
                      std::to_string(input_weights_.cols()));
}

void ContentEsn::set_state(const Eigen::VectorXd& state) {
  if (state.size() != state_.size()) throw ConfigError("state dimension mismatch");
  state_ = state;
}

const Eigen::VectorXd& ContentEsn::update_state(const ContextVector& x) {
  check_context(x);
  state_ = (reservoir_ * state_ + input_weights_ * x.features()).array().tanh().matrix();
  return state_;
}

Eigen::VectorXd ContentEsn::features(const ContextVector& x) const {
  Eigen::VectorXd z(state_.size() + input_weights_.cols());
  z << state_, x.features();
  return z;
}

Eigen::VectorXd ContentEsn::raw_output(const ContextVector& x) const {
  check_context(x);
  return output_weights_ * features(x);
}

ContentDistribution ContentEsn::predict(const ContextVector& x) const {
  return ContentDistribution::project(raw_output(x));
}

double ContentEsn::train_step(const ContextVector& x, const ContentDistribution& observed) {
  check_context(x);
  if (static_cast<Eigen::Index>(observed.size()) != output_weights_.rows())
    throw ConfigError("observed distribution has the wrong catalog size");
  const Eigen::VectorXd z = features(x);
  const Eigen::VectorXd raw = output_weights_ * z;
  const double error = (observed.probs() - ContentDistribution::project(raw).probs()).lpNorm<1>();
  output_weights_.noalias() += learning_rate_ * (observed.probs() - raw) * z.transpose();
  return error;
}

}  // namespace esncache
