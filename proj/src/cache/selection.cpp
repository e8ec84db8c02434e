#include "esncache/cache/selection.hpp"

#include <algorithm>
#include <numeric>

#include "esncache/core/error.hpp"

namespace esncache {

std::vector<std::size_t> top_k(std::span<const double> scores, std::size_t k) {
  if (k > scores.size()) throw ConfigError("cannot select more contents than the catalog holds");
  std::vector<std::size_t> idx(scores.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  idx.resize(k);
  std::sort(idx.begin(), idx.end());
  return idx;
}

Eigen::VectorXd rrh_popularity(std::span<const Eigen::VectorXd> predictions, std::span<const double> weights) {
  if (predictions.size() != weights.size()) throw ConfigError("one weight per user is required");
  if (predictions.empty()) return {};
  Eigen::VectorXd p = Eigen::VectorXd::Zero(predictions.front().size());
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    if (predictions[i].size() != p.size()) throw ConfigError("predictions disagree on catalog size");
    p += weights[i] * predictions[i];
  }
  return p / static_cast<double>(predictions.size());
}

std::vector<std::size_t> select_rrh_cache(std::span<const Eigen::VectorXd> predictions,
                                          std::span<const double> weights, std::size_t capacity,
                                          std::size_t catalog_size) {
  if (capacity > catalog_size) throw ConfigError("C_r exceeds the catalog size");
  if (predictions.empty()) return {};
  const Eigen::VectorXd p = rrh_popularity(predictions, weights);
  if (static_cast<std::size_t>(p.size()) != catalog_size) throw ConfigError("predictions must cover the catalog");
  return top_k(std::span<const double>(p.data(), catalog_size), capacity);
}

Eigen::VectorXd update_distribution(const Eigen::VectorXd& p, std::span<const std::size_t> cached) {
  Eigen::VectorXd out = p;
  for (std::size_t n : cached) {
    if (n >= static_cast<std::size_t>(p.size())) throw ConfigError("cached content index out of range");
    out(static_cast<Eigen::Index>(n)) = 0.0;
  }
  return out;
}

std::vector<std::size_t> select_cloud_cache(const Eigen::VectorXd& popularity, std::size_t capacity) {
  if (capacity > static_cast<std::size_t>(popularity.size())) throw ConfigError("C_c exceeds the catalog size");
  return top_k(std::span<const double>(popularity.data(), static_cast<std::size_t>(popularity.size())), capacity);
}

CacheState::CacheState(std::size_t catalog_size, std::size_t rrh_count, std::size_t cloud_capacity,
                       std::size_t rrh_capacity)
    : catalog_size_(catalog_size),
      cloud_capacity_(cloud_capacity),
      rrh_capacity_(rrh_capacity),
      rrh_(rrh_count),
      holders_(catalog_size, 0) {
  if (catalog_size == 0) throw ConfigError("N must be positive");
  if (cloud_capacity > catalog_size) throw ConfigError("C_c exceeds the catalog size");
  if (rrh_capacity > catalog_size) throw ConfigError("C_r exceeds the catalog size");
}

void CacheState::check(std::vector<std::size_t>& contents, std::size_t capacity) const {
  std::sort(contents.begin(), contents.end());
  if (std::adjacent_find(contents.begin(), contents.end()) != contents.end())
    throw ConfigError("a cache holds duplicate contents");
  if (contents.size() > capacity) throw ConfigError("cache capacity exceeded");
  if (!contents.empty() && contents.back() >= catalog_size_) throw ConfigError("content index out of range");
}

void CacheState::set_cloud(std::vector<std::size_t> contents) {
  check(contents, cloud_capacity_);
  cloud_ = std::move(contents);
}

void CacheState::set_rrh(std::size_t r, std::vector<std::size_t> contents) {
  check(contents, rrh_capacity_);
  auto& slot = rrh_.at(r);
  for (std::size_t n : slot) --holders_[n];
  slot = std::move(contents);
  for (std::size_t n : slot) ++holders_[n];
}

bool CacheState::in_cloud(std::size_t content) const {
  return std::binary_search(cloud_.begin(), cloud_.end(), content);
}

bool CacheState::in_rrh(std::size_t r, std::size_t content) const {
  const auto& c = rrh_.at(r);
  return std::binary_search(c.begin(), c.end(), content);
}

bool CacheState::in_other_rrh(std::size_t except, std::size_t content) const {
  if (content >= catalog_size_) return false;
  const int own = in_rrh(except, content) ? 1 : 0;
  return holders_[content] - own > 0;
}

}  // namespace esncache
