#include "esncache/cache/clustering.hpp"

#include <algorithm>

#include "esncache/cache/sampling.hpp"
#include "esncache/core/error.hpp"

namespace esncache {

std::vector<std::size_t> ClusterSet::cooperating(std::size_t rrh) const {
  if (rrh >= rrh_count) throw ConfigError("RRH index out of range");
  std::vector<std::size_t> out;
  for (const auto& c : clusters) {
    if (std::binary_search(c.begin(), c.end(), rrh)) out.insert(out.end(), c.begin(), c.end());
  }
  if (out.empty()) out.push_back(rrh);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ClusterSet ClusterSet::singletons(std::size_t rrh_count) {
  ClusterSet set;
  set.rrh_count = rrh_count;
  for (std::size_t r = 0; r < rrh_count; ++r) set.clusters.push_back({r});
  return set;
}

ClusterSet cluster_rrhs(const std::vector<std::vector<Eigen::VectorXd>>& per_rrh, double chi) {
  if (!(chi >= 0.0)) throw ConfigError("chi must be non-negative");
  const std::size_t rrh_count = per_rrh.size();

  std::vector<const Eigen::VectorXd*> anchors;
  for (const auto& users : per_rrh) {
    for (const auto& p : users) {
      const bool covered = std::any_of(anchors.begin(), anchors.end(), [&](const Eigen::VectorXd* a) {
        return distribution_distance(*a, p) < chi;
      });
      if (!covered) anchors.push_back(&p);
    }
  }

  std::vector<std::vector<std::size_t>> raw;
  for (const Eigen::VectorXd* anchor : anchors) {
    std::vector<std::size_t> members;
    for (std::size_t r = 0; r < rrh_count; ++r) {
      for (const auto& p : per_rrh[r]) {
        if (distribution_distance(*anchor, p) < chi) {
          members.push_back(r);
          break;
        }
      }
    }
    raw.push_back(std::move(members));
  }
  for (std::size_t r = 0; r < rrh_count; ++r)
    if (per_rrh[r].empty()) raw.push_back({r});

  std::sort(raw.begin(), raw.end());
  raw.erase(std::unique(raw.begin(), raw.end()), raw.end());

  ClusterSet set;
  set.chi = chi;
  set.rrh_count = rrh_count;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const bool contained = std::any_of(raw.begin(), raw.end(), [&](const auto& other) {
      return &other != &raw[i] && other.size() > raw[i].size() &&
             std::includes(other.begin(), other.end(), raw[i].begin(), raw[i].end());
    });
    if (!contained) set.clusters.push_back(raw[i]);
  }
  return set;
}

}  // namespace esncache
