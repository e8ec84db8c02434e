#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <vector>

#include "esncache/core/combinatorics.hpp"
#include "esncache/core/error.hpp"
#include "esncache/core/rng.hpp"
#include "esncache/cache/clustering.hpp"
#include "esncache/cache/sampling.hpp"
#include "esncache/cache/selection.hpp"

using namespace esncache;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> v) {
  return Eigen::Map<const Eigen::VectorXd>(v.begin(), static_cast<Eigen::Index>(v.size()));
}

using Sizes = std::vector<std::size_t>;

}  // namespace

TEST_CASE("Hoeffding sample sizes") {
  CHECK(hoeffding_sample_size(0.05, 0.05) == 600);
  CHECK(hoeffding_sample_size(0.03, 0.05) == 1665);
  CHECK(hoeffding_sample_size(0.1, 1.0) == 0);
  CHECK_THROWS_AS(hoeffding_sample_size(0.0, 0.05), ConfigError);
  CHECK_THROWS_AS(hoeffding_sample_size(0.05, 0.0), ConfigError);
}

TEST_CASE("popularity of a constant stream") {
  const auto p = vec({0.5, 0.3, 0.2});
  std::vector<DemandRecord> stream;
  for (std::size_t i = 0; i < 3000; ++i) stream.push_back({i / 100, p, 2.0});
  const auto est = estimate_popularity(stream, SamplingPlan::make(0.05, 0.05), 9);
  CHECK(est.sampled == 600);
  CHECK_FALSE(est.full_scan);
  CHECK((est.popularity - 2.0 * p).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("short streams are scanned in full") {
  std::vector<DemandRecord> stream{{0, vec({1, 0}), 1.0}, {0, vec({0, 1}), 3.0}};
  const auto est = estimate_popularity(stream, SamplingPlan::make(0.05, 0.05), 1);
  CHECK(est.full_scan);
  CHECK(est.sampled == 2);
  CHECK(est.popularity(0) == doctest::Approx(0.5));
  CHECK(est.popularity(1) == doctest::Approx(1.5));
}

TEST_CASE("sampled estimate coverage") {
  Rng rng(4);
  std::vector<DemandRecord> stream;
  for (std::size_t slot = 0; slot < 40; ++slot)
    for (std::size_t u = 0; u < 100; ++u) {
      Eigen::VectorXd one = Eigen::VectorXd::Zero(5);
      one(static_cast<Eigen::Index>(rng.index(5))) = 1.0;
      stream.push_back({slot, one, 1.0});
    }
  const auto cov = sampling_coverage(stream, SamplingPlan::make(0.05, 0.05), 300, 2);
  CHECK(cov.trials == 300);
  CHECK(cov.failure_rate <= 0.05);
  CHECK(cov.mean_error < 0.05);
}

TEST_CASE("total variation distance") {
  const auto p = vec({0.5, 0.5, 0.0});
  CHECK(distribution_distance(p, p) == 0.0);
  CHECK(distribution_distance(vec({1, 0}), vec({0, 1})) == 1.0);
  CHECK(distribution_distance(p, vec({0.25, 0.25, 0.5})) == doctest::Approx(0.5));
  CHECK_THROWS_AS(distribution_distance(p, vec({1, 0})), ConfigError);

  Eigen::VectorXd a = Eigen::VectorXd::Zero(4000), b = Eigen::VectorXd::Zero(4000);
  a.head(2000).setConstant(1.0 / 2000);
  b.tail(2000).setConstant(1.0 / 2000);
  const double sampled = distribution_distance(a, b, SamplingPlan::make(0.05, 0.05), 3);
  CHECK(std::abs(sampled - 1.0) < 0.2);
}

TEST_CASE("shared demand clusters RRHs pairwise") {
  const auto u1 = vec({1, 0, 0}), u2 = vec({0, 1, 0});
  const auto set = cluster_rrhs({{u1, u2}, {u1}, {u2}}, 0.85);
  CHECK(set.clusters == std::vector<Sizes>{{0, 1}, {0, 2}});
  CHECK(set.cooperating(0) == Sizes{0, 1, 2});
  CHECK(set.cooperating(1) == Sizes{0, 1});
}

TEST_CASE("distant demand stays singleton") {
  const auto set = cluster_rrhs({{vec({1, 0, 0})}, {vec({0, 1, 0})}, {vec({0, 0, 1})}}, 0.85);
  CHECK(set.clusters == std::vector<Sizes>{{0}, {1}, {2}});
  CHECK(set.cooperating(2) == Sizes{2});
}

TEST_CASE("close demand forms one cluster") {
  const auto set = cluster_rrhs({{vec({0.5, 0.5, 0})}, {vec({0.4, 0.5, 0.1})}, {vec({0.5, 0.4, 0.1})}}, 0.85);
  CHECK(set.clusters == std::vector<Sizes>{{0, 1, 2}});
  const auto lonely = cluster_rrhs({{vec({1, 0})}, {}}, 0.85);
  CHECK(lonely.clusters == std::vector<Sizes>{{0}, {1}});
  CHECK(ClusterSet::singletons(3).clusters.size() == 3);
}

TEST_CASE("RRH cache selection") {
  std::vector<Eigen::VectorXd> one{vec({0.5, 0.3, 0.2})};
  std::vector<double> w1{1.0};
  CHECK(select_rrh_cache(one, w1, 1, 3) == Sizes{0});

  std::vector<Eigen::VectorXd> two{vec({1, 0, 0}), vec({0, 1, 0})};
  std::vector<double> w2{1.0, 3.0};
  CHECK(select_rrh_cache(two, w2, 1, 3) == Sizes{1});
  CHECK(select_rrh_cache({}, {}, 2, 3).empty());

  std::vector<double> tie{0.1, 0.3, 0.1, 0.1, 0.3};
  CHECK(top_k(tie, 1) == Sizes{1});
}

TEST_CASE("updated distribution") {
  const auto p = vec({0.5, 0.3, 0.2});
  CHECK(update_distribution(p, Sizes{}) == p);
  CHECK(update_distribution(p, Sizes{0, 1, 2}).isZero());
  CHECK(update_distribution(p, Sizes{0}) == vec({0, 0.3, 0.2}));
}

TEST_CASE("cloud cache selection") {
  CHECK(select_cloud_cache(vec({0.1, 0.4, 0.3, 0.2}), 2) == Sizes{1, 2});
  CHECK(select_cloud_cache(Eigen::VectorXd::Constant(6, 0.2), 3) == Sizes{0, 1, 2});
}

TEST_CASE("top-k matches exhaustive search") {
  Rng rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng.index(12);
    const std::size_t k = rng.index(n + 1);
    std::vector<double> s(n);
    for (auto& v : s) v = rng.uniform();
    double best = -1.0;
    for_each_combination(n, k, [&](const std::vector<std::size_t>& c) {
      double t = 0.0;
      for (auto i : c) t += s[i];
      best = std::max(best, t);
    });
    double got = 0.0;
    for (auto i : top_k(s, k)) got += s[i];
    CHECK(got == doctest::Approx(best).epsilon(1e-12));
  }
}

TEST_CASE("cache state bookkeeping") {
  CacheState cache(5, 3, 2, 1);
  cache.set_cloud({4, 1});
  CHECK(cache.cloud() == Sizes{1, 4});
  cache.set_rrh(0, {3});
  cache.set_rrh(2, {3});
  CHECK(cache.in_rrh(0, 3));
  CHECK(cache.in_other_rrh(0, 3));
  cache.set_rrh(2, {2});
  CHECK_FALSE(cache.in_other_rrh(0, 3));
  CHECK(cache.in_other_rrh(1, 3));
  CHECK_THROWS_AS(cache.set_rrh(1, {0, 1}), ConfigError);
  CHECK_THROWS_AS(cache.set_cloud({7}), ConfigError);
}
