#include "esncache/esn/distribution.hpp"

#include <cmath>

#include "esncache/core/error.hpp"

namespace esncache {

ContextVector::ContextVector(Eigen::VectorXd features) : features_(std::move(features)) {
  if (!features_.allFinite()) throw ConfigError("context vector has non-finite entries");
}

ContextVector::ContextVector(std::span<const double> features)
    : ContextVector(Eigen::Map<const Eigen::VectorXd>(features.data(),
                                                      static_cast<Eigen::Index>(features.size()))) {}

ContentDistribution::ContentDistribution(Eigen::VectorXd probs) : probs_(std::move(probs)) {
  if (probs_.size() == 0) throw ConfigError("empty content distribution");
  if (!probs_.allFinite() || probs_.minCoeff() < 0.0)
    throw ConfigError("content distribution has negative or non-finite entries");
  if (std::abs(probs_.sum() - 1.0) > 1e-9) throw ConfigError("content distribution does not sum to 1");
}

ContentDistribution ContentDistribution::uniform(std::size_t n) {
  if (n == 0) throw ConfigError("empty content distribution");
  const auto len = static_cast<Eigen::Index>(n);
  return {Eigen::VectorXd::Constant(len, 1.0 / static_cast<double>(n)), Unchecked{}};
}

ContentDistribution ContentDistribution::one_hot(std::size_t n, std::size_t index) {
  if (index >= n) throw ConfigError("one-hot index out of range");
  Eigen::VectorXd p = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  p(static_cast<Eigen::Index>(index)) = 1.0;
  return {std::move(p), Unchecked{}};
}

ContentDistribution ContentDistribution::project(const Eigen::VectorXd& raw) {
  if (raw.size() == 0) throw ConfigError("empty content distribution");
  Eigen::VectorXd p = raw.unaryExpr([](double v) { return std::isfinite(v) && v > 0.0 ? v : 0.0; });
  const double mass = p.sum();
  if (!(mass > 0.0) || !std::isfinite(mass)) return uniform(static_cast<std::size_t>(raw.size()));
  p /= mass;
  return {std::move(p), Unchecked{}};
}

}  // namespace esncache
