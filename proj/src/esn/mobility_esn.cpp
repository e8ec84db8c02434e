#include "esncache/esn/mobility_esn.hpp"

#include <Eigen/Cholesky>
#include <Eigen/QR>
#include <cmath>

#include "esncache/core/error.hpp"

namespace esncache {

namespace {

void check_support(double v) {
  if (!(std::abs(v) < 1.0)) throw ConfigError("cycle weights must lie in (-1, 1)");
}

}  // namespace

WeightDistribution WeightDistribution::point_mass(double a) {
  check_support(a);
  return {Kind::PointMass, a, a};
}

WeightDistribution WeightDistribution::symmetric_binary(double a) {
  check_support(a);
  if (a < 0.0) a = -a;
  return {Kind::SymmetricBinary, -a, a};
}

WeightDistribution WeightDistribution::uniform(double lo, double hi) {
  check_support(lo);
  check_support(hi);
  if (!(lo < hi)) throw ConfigError("uniform weight law needs lo < hi");
  return {Kind::Uniform, lo, hi};
}

double WeightDistribution::sample(Rng& rng) const {
  switch (kind_) {
    case Kind::PointMass:
      return hi_;
    case Kind::SymmetricBinary:
      return rng.uniform() < 0.5 ? -hi_ : hi_;
    case Kind::Uniform:
      return rng.uniform(lo_, hi_);
  }
  return 0.0;
}

double WeightDistribution::moment(unsigned n) const {
  if (n == 0) return 1.0;
  switch (kind_) {
    case Kind::PointMass:
      return std::pow(hi_, n);
    case Kind::SymmetricBinary:
      return n % 2 == 0 ? std::pow(hi_, n) : 0.0;
    case Kind::Uniform: {
      const double m = n + 1.0;
      return (std::pow(hi_, m) - std::pow(lo_, m)) / (m * (hi_ - lo_));
    }
  }
  return 0.0;
}

bool WeightDistribution::zero_mean() const {
  switch (kind_) {
    case Kind::PointMass:
      return hi_ == 0.0;
    case Kind::SymmetricBinary:
      return true;
    case Kind::Uniform:
      return std::abs(lo_ + hi_) <= 1e-15;
  }
  return false;
}

bool WeightDistribution::strictly_positive() const {
  switch (kind_) {
    case Kind::PointMass:
      return hi_ > 0.0;
    case Kind::SymmetricBinary:
      return false;
    case Kind::Uniform:
      return lo_ >= 0.0;  // w > 0 almost surely
  }
  return false;
}

Eigen::SparseMatrix<double> build_cycle_reservoir(std::size_t w, const WeightDistribution& spec,
                                                  std::uint64_t seed) {
  if (w == 0) throw ConfigError("cycle reservoir needs W >= 1");
  Rng rng(seed);
  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(w);
  for (std::size_t i = 0; i < w; ++i) entries.emplace_back(i, (i + w - 1) % w, spec.sample(rng));
  const auto dim = static_cast<Eigen::Index>(w);
  Eigen::SparseMatrix<double> m(dim, dim);
  m.setFromTriplets(entries.begin(), entries.end());
  m.makeCompressed();
  return m;
}

Eigen::MatrixXd ridge_train(const TrainingWindow& window, double ridge_lambda) {
  const Eigen::MatrixXd& v = window.states;
  const Eigen::MatrixXd& s = window.targets;
  if (v.cols() == 0) throw ConfigError("ridge training needs at least one sample");
  if (s.cols() != v.cols()) throw ConfigError("states and targets disagree on N_tr");
  if (!(ridge_lambda >= 0.0)) throw ConfigError("ridge lambda must be non-negative");

  Eigen::MatrixXd gram = v * v.transpose();
  gram.diagonal().array() += ridge_lambda * ridge_lambda;
  const Eigen::MatrixXd rhs = v * s.transpose();  // W x N_s

  if (ridge_lambda > 0.0) {
    Eigen::LLT<Eigen::MatrixXd> llt(gram);
    if (llt.info() == Eigen::Success) return llt.solve(rhs).transpose();
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(gram);
  qr.setThreshold(1e-12);
  if (qr.rank() < gram.rows())
    throw NumericalRankError("ridge system is rank deficient (rank " + std::to_string(qr.rank()) +
                             " of " + std::to_string(gram.rows()) + ")");
  return qr.solve(rhs).transpose();
}

MobilityEsn::MobilityEsn(std::size_t reservoir_size, std::size_t horizon,
                         const WeightDistribution& spec, double ridge_lambda, std::uint64_t seed)
    : horizon_(horizon), ridge_lambda_(ridge_lambda) {
  if (horizon == 0) throw ConfigError("N_s must be positive");
  if (!(ridge_lambda >= 0.0)) throw ConfigError("ridge lambda must be non-negative");
  reservoir_ = build_cycle_reservoir(reservoir_size, spec, derive_seed(seed, "cycle"));
  Rng rng(derive_seed(seed, "input"));
  input_weights_.resize(static_cast<Eigen::Index>(reservoir_size));
  for (Eigen::Index i = 0; i < input_weights_.size(); ++i) input_weights_(i) = rng.uniform(-1.0, 1.0);
  output_weights_ = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(horizon), input_weights_.size());
  state_ = Eigen::VectorXd::Zero(input_weights_.size());
}

MobilityEsn::MobilityEsn(Eigen::VectorXd input_weights, Eigen::SparseMatrix<double> reservoir,
                         std::size_t horizon, double ridge_lambda)
    : input_weights_(std::move(input_weights)),
      reservoir_(std::move(reservoir)),
      horizon_(horizon),
      ridge_lambda_(ridge_lambda) {
  const Eigen::Index w = input_weights_.size();
  if (w == 0) throw ConfigError("cycle reservoir needs W >= 1");
  if (reservoir_.rows() != w || reservoir_.cols() != w) throw ConfigError("reservoir must be W x W");
  if (horizon == 0) throw ConfigError("N_s must be positive");
  output_weights_ = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(horizon), w);
  state_ = Eigen::VectorXd::Zero(w);
}

const Eigen::VectorXd& MobilityEsn::update_state(double m) {
  state_ = reservoir_ * state_ + input_weights_ * m;
  return state_;
}

Eigen::VectorXd MobilityEsn::predict() const { return output_weights_ * state_; }

void MobilityEsn::train(const TrainingWindow& window) {
  if (window.states.rows() != state_.size()) throw ConfigError("training states have the wrong width");
  if (window.targets.rows() != static_cast<Eigen::Index>(horizon_))
    throw ConfigError("training targets must have N_s rows");
  output_weights_ = ridge_train(window, ridge_lambda_);
}

void MobilityEsn::set_output_weights(Eigen::MatrixXd weights) {
  if (weights.rows() != static_cast<Eigen::Index>(horizon_) || weights.cols() != state_.size())
    throw ConfigError("output weights must be N_s x W");
  output_weights_ = std::move(weights);
}

std::size_t MobilityEsn::fit_sequence(std::span<const double> codes, std::size_t washout,
                                      std::size_t max_window) {
  reset_state();
  const std::size_t len = codes.size();
  // Column t pairs the state after codes[t] with codes[t+1 .. t+N_s].
  const std::size_t first = washout;
  const std::size_t end = len > horizon_ ? len - horizon_ : 0;
  std::size_t start = first;
  if (max_window > 0 && end > first + max_window) start = end - max_window;
  const std::size_t columns = end > start ? end - start : 0;

  TrainingWindow window;
  window.states.resize(state_.size(), static_cast<Eigen::Index>(columns));
  window.targets.resize(static_cast<Eigen::Index>(horizon_), static_cast<Eigen::Index>(columns));
  for (std::size_t t = 0; t < len; ++t) {
    update_state(codes[t]);
    if (t >= start && t < end) {
      const auto c = static_cast<Eigen::Index>(t - start);
      window.states.col(c) = state_;
      for (std::size_t h = 0; h < horizon_; ++h)
        window.targets(static_cast<Eigen::Index>(h), c) = codes[t + 1 + h];
    }
  }
  if (columns > 0) output_weights_ = ridge_train(window, ridge_lambda_);
  return columns;
}

}  // namespace esncache
