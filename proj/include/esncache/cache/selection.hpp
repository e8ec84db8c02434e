#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <span>
#include <vector>

namespace esncache {

// Indices of the k largest scores, lowest index first among equal scores.
// Returned in ascending index order.
std::vector<std::size_t> top_k(std::span<const double> scores, std::size_t k);

// p_rn = sum_i p_rin E_i / N_r over the users of one RRH.
Eigen::VectorXd rrh_popularity(std::span<const Eigen::VectorXd> predictions, std::span<const double> weights);

// Top-C_r contents by p_rn; empty when the RRH has no users.
std::vector<std::size_t> select_rrh_cache(std::span<const Eigen::VectorXd> predictions,
                                          std::span<const double> weights, std::size_t capacity,
                                          std::size_t catalog_size);

// Zeroes the entries cached at the user's RRH. No renormalization.
Eigen::VectorXd update_distribution(const Eigen::VectorXd& p, std::span<const std::size_t> cached);

// Top-C_c contents by p'.
std::vector<std::size_t> select_cloud_cache(const Eigen::VectorXd& popularity, std::size_t capacity);

// Cloud cache plus one cache per RRH, content indices sorted and unique.
class CacheState {
 public:
  CacheState(std::size_t catalog_size, std::size_t rrh_count, std::size_t cloud_capacity,
             std::size_t rrh_capacity);

  void set_cloud(std::vector<std::size_t> contents);
  void set_rrh(std::size_t rrh, std::vector<std::size_t> contents);

  const std::vector<std::size_t>& cloud() const { return cloud_; }
  const std::vector<std::size_t>& rrh(std::size_t r) const { return rrh_.at(r); }
  bool in_cloud(std::size_t content) const;
  bool in_rrh(std::size_t r, std::size_t content) const;
  // True when any RRH other than `except` caches the content.
  bool in_other_rrh(std::size_t except, std::size_t content) const;

  std::size_t catalog_size() const { return catalog_size_; }
  std::size_t rrh_count() const { return rrh_.size(); }
  std::size_t cloud_capacity() const { return cloud_capacity_; }
  std::size_t rrh_capacity() const { return rrh_capacity_; }

 private:
  void check(std::vector<std::size_t>& contents, std::size_t capacity) const;

  std::size_t catalog_size_;
  std::size_t cloud_capacity_;
  std::size_t rrh_capacity_;
  std::vector<std::size_t> cloud_;
  std::vector<std::vector<std::size_t>> rrh_;
  std::vector<int> holders_;  // number of RRHs caching each content
};

}  // namespace esncache
