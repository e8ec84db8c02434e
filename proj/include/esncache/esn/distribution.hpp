#pragma once

#include <Eigen/Dense>
#include <span>

namespace esncache {

// Per-slot request context: time, weekday, gender, occupation, age, device,
// reserved. Entries are normalized to [0, 1].
class ContextVector {
 public:
  static constexpr std::size_t kDefaultDim = 7;

  ContextVector() = default;
  explicit ContextVector(Eigen::VectorXd features);
  explicit ContextVector(std::span<const double> features);

  const Eigen::VectorXd& features() const { return features_; }
  std::size_t size() const { return static_cast<std::size_t>(features_.size()); }
  double operator[](std::size_t i) const { return features_(static_cast<Eigen::Index>(i)); }

 private:
  Eigen::VectorXd features_;
};

// A point on the probability simplex over the content catalog.
class ContentDistribution {
 public:
  ContentDistribution() = default;
  // Validates non-negativity and unit mass (1e-9).
  explicit ContentDistribution(Eigen::VectorXd probs);

  static ContentDistribution uniform(std::size_t n);
  static ContentDistribution one_hot(std::size_t n, std::size_t index);
  // Clamps negatives to zero and renormalizes; uniform when nothing is left.
  static ContentDistribution project(const Eigen::VectorXd& raw);

  const Eigen::VectorXd& probs() const { return probs_; }
  std::size_t size() const { return static_cast<std::size_t>(probs_.size()); }
  double operator[](std::size_t i) const { return probs_(static_cast<Eigen::Index>(i)); }

 private:
  struct Unchecked {};
  ContentDistribution(Eigen::VectorXd probs, Unchecked) : probs_(std::move(probs)) {}

  Eigen::VectorXd probs_;
};

}  // namespace esncache
