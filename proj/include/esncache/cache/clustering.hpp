#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

namespace esncache {

struct ClusterSet {
  std::vector<std::vector<std::size_t>> clusters;  // each sorted, list sorted
  double chi = 0.85;
  std::size_t rrh_count = 0;

  // Every RRH sharing a cluster with `rrh`, itself included, sorted.
  std::vector<std::size_t> cooperating(std::size_t rrh) const;
  // Each RRH alone.
  static ClusterSet singletons(std::size_t rrh_count);
};

// `per_rrh[r]` lists the demand distributions of the users associated with
// RRH r. Users are scanned in RRH order; a user opens a new type unless it
// lies within chi (total variation) of an existing type anchor. Each type
// clusters all RRHs hosting a user within chi of its anchor. Clusters
// contained in another cluster are dropped and RRHs without users stay
// singletons.
ClusterSet cluster_rrhs(const std::vector<std::vector<Eigen::VectorXd>>& per_rrh, double chi);

}  // namespace esncache
