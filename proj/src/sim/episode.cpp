#include "esncache/sim/episode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <string>

#include "esncache/cache/clustering.hpp"
#include "esncache/cache/sampling.hpp"
#include "esncache/cache/selection.hpp"
#include "esncache/core/error.hpp"
#include "esncache/core/rng.hpp"
#include "esncache/esn/content_esn.hpp"
#include "esncache/esn/mobility_esn.hpp"
#include "esncache/qos/effective_capacity.hpp"
#include "esncache/qos/link_qos.hpp"
#include "esncache/sim/channel.hpp"

namespace esncache {

std::string_view policy_name(Policy policy) {
  switch (policy) {
    case Policy::Proposed:
      return "proposed";
    case Policy::RandomClustered:
      return "random-cluster";
    case Policy::RandomUnclustered:
      return "random-nocluster";
    case Policy::Oracle:
      return "oracle";
  }
  return "unknown";
}

Policy parse_policy(std::string_view name) {
  for (Policy p : {Policy::Proposed, Policy::RandomClustered, Policy::RandomUnclustered, Policy::Oracle})
    if (policy_name(p) == name) return p;
  throw ConfigError("unknown policy '" + std::string(name) + "'");
}

namespace {

// First k entries of a seeded Fisher-Yates shuffle of 0..n-1, sorted. The
// prefix for a given seed does not depend on k.
// Sorted distinct RRHs serving at least one user.
std::vector<std::size_t> active_rrhs(std::vector<std::size_t> serving) {
  std::sort(serving.begin(), serving.end());
  serving.erase(std::unique(serving.begin(), serving.end()), serving.end());
  return serving;
}

std::vector<std::size_t> random_prefix(std::size_t n, std::size_t k, std::uint64_t seed) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  Rng rng(seed);
  for (std::size_t i = 0; i < k; ++i) std::swap(perm[i], perm[i + rng.index(n - i)]);
  perm.resize(k);
  std::sort(perm.begin(), perm.end());
  return perm;
}

ClusterSet group_and_cluster(const std::vector<Eigen::VectorXd>& demand, const std::vector<std::size_t>& serving,
                             std::size_t rrhs, double chi) {
  std::vector<std::vector<Eigen::VectorXd>> per_rrh(rrhs);
  for (std::size_t i = 0; i < demand.size(); ++i) per_rrh[serving[i]].push_back(demand[i]);
  return cluster_rrhs(per_rrh, chi);
}

// Positions, demand, clusters and capacity draws for every slot of a period,
// either predicted or true.
struct PeriodPlan {
  std::vector<std::vector<Point>> pos;  // [o][i], o in [0, T_tau]
  std::vector<std::vector<std::size_t>> serving;
  std::vector<std::vector<Eigen::VectorXd>> demand;
  std::vector<ClusterSet> clusters;
  std::vector<std::vector<double>> draws;  // [o][i * n_mc + m]
  std::vector<std::vector<double>> a;      // E(theta_O) per [o][i]
};

class EpisodeRunner {
 public:
  EpisodeRunner(const SimConfig& cfg, std::span<const Policy> policies, std::uint64_t seed,
                const EpisodeOptions& options)
      : cfg_(cfg),
        seed_(seed),
        options_(options),
        world_(build_world(cfg, seed, options.traces)),
        channel_(cfg, world_.rrhs),
        plan_(SamplingPlan::make(cfg.epsilon, cfg.delta)),
        U_(cfg.users),
        R_(cfg.rrhs),
        N_(cfg.catalog_size) {
    if (policies.empty()) throw ConfigError("no policy to run");
    for (Policy p : policies) {
      runs_.push_back(Run{p, CacheState(N_, R_, cfg.cloud_capacity, cfg.rrh_capacity),
                          per_content_rate(cfg.wired.fronthaul_rate_bps, U_)});
      runs_.back().report.policy = p;
      runs_.back().report.seed = seed;
      if (p == Policy::Oracle) has_oracle_ = true;
      if (p == Policy::RandomUnclustered)
        need_unclustered_ = true;
      else
        need_clustered_ = true;
    }
    if (has_oracle_) {
      const double size = oracle_search_size(N_, cfg.cloud_capacity, cfg.rrh_capacity, R_);
      if (!(size <= cfg.oracle_limit))
        throw InstanceTooLargeError("oracle search size " + std::to_string(size) + " exceeds oracle_limit " +
                                    std::to_string(cfg.oracle_limit));
    }
    use_esn_ = !cfg.oracle_predictions;
    history_.resize(U_);
    if (use_esn_) {
      content_esn_.reserve(U_);
      mobility_esn_.reserve(U_);
      for (std::size_t i = 0; i < U_; ++i) {
        content_esn_.emplace_back(cfg.content_esn(), derive_seed(seed, "content-esn", i));
        mobility_esn_.emplace_back(cfg.cycle_units, cfg.horizon, cfg.cycle_weights(), cfg.ridge_lambda,
                                   derive_seed(seed, "mobility-esn", i));
      }
    }
  }

  std::vector<EpisodeReport> run() {
    for (std::size_t g = 0; g < cfg_.warmup_slots; ++g) {
      record_mobility(g);
      if (use_esn_)
        for (std::size_t i = 0; i < U_; ++i) {
          const ContextVector x = world_.workload.context(i, g);
          content_esn_[i].update_state(x);
          content_esn_[i].train_step(x, truth(i, g));
        }
    }
    for (std::size_t k = 0; k < cfg_.slots; ++k) step(k);

    std::vector<EpisodeReport> out;
    const double evaluated = static_cast<double>(cfg_.slots * U_);
    for (auto& run : runs_) {
      EpisodeReport& r = run.report;
      std::vector<double> e, j;
      for (const auto& s : r.slots) {
        e.push_back(s.sum_capacity);
        j.push_back(s.planned);
        r.infeasible += s.infeasible;
      }
      r.mean_capacity = long_term_average(e);
      r.mean_planned = truth_planning() ? long_term_average(j) : std::numeric_limits<double>::quiet_NaN();
      r.prediction = {serving_hits_ / evaluated, position_error_ / evaluated, content_tv_ / evaluated};
      out.push_back(std::move(r));
    }
    return out;
  }

 private:
  struct Run {
    Policy policy;
    CacheState cache;
    double fronthaul_rate;  // v_FU realized in the previous slot
    double theta_A = 0.0;   // cloud-path exponent used for this period
    bool period_feasible = true;
    EpisodeReport report{};
    OracleDecision oracle{};
    std::vector<std::vector<double>> truth_c{};  // true cloud-path weights [o][i]
  };

  bool truth_planning() const { return has_oracle_ || !use_esn_; }

  ContentDistribution truth(std::size_t i, std::size_t g) const {
    return ContentDistribution(world_.workload.distribution(i, g));
  }

  void record_mobility(std::size_t g) {
    if (g % cfg_.mobility_period != 0) return;
    for (std::size_t i = 0; i < U_; ++i)
      history_[i].push_back(static_cast<double>(world_.grid.encode(world_.positions[g][i])));
  }

  double capacity(double theta, const std::vector<double>& draws, std::size_t i) const {
    const std::size_t n = channel_.n_mc();
    return effective_capacity(theta, std::span<const double>(draws).subspan(i * n, n), channel_.tau());
  }

  std::optional<double> cloud_exponent(double fronthaul_rate) const {
    return path_exponent(cfg_.theta_O, DeliveryPath::CloudCache, cfg_.wired, fronthaul_rate);
  }

  // Fills serving, clusters, draws and a from pos and demand.
  void complete_plan(PeriodPlan& p, std::size_t g0) const {
    const std::size_t T = cfg_.cloud_period, n = channel_.n_mc();
    p.serving.assign(T, std::vector<std::size_t>(U_));
    p.clusters.clear();
    p.draws.assign(T, std::vector<double>(U_ * n));
    p.a.assign(T, std::vector<double>(U_));
    for (std::size_t o = 0; o < T; ++o) {
      for (std::size_t i = 0; i < U_; ++i) p.serving[o][i] = nearest(p.pos[o][i], world_.rrhs);
      p.clusters.push_back(group_and_cluster(p.demand[o], p.serving[o], R_, cfg_.chi));
      const auto active = active_rrhs(p.serving[o]);
      for (std::size_t i = 0; i < U_; ++i) {
        const auto coop = p.clusters[o].cooperating(p.serving[o][i]);
        channel_.capacity_draws(p.pos[o][i], p.pos[o + 1][i], p.serving[o][i], coop, active,
                                derive_seed(seed_, "plan-fading", i, g0 + o),
                                std::span<double>(p.draws[o]).subspan(i * n, n));
        p.a[o][i] = capacity(cfg_.theta_O, p.draws[o], i);
      }
    }
  }

  PeriodPlan truth_plan(std::size_t g0) const {
    PeriodPlan p;
    for (std::size_t o = 0; o <= cfg_.cloud_period; ++o) p.pos.push_back(world_.positions[g0 + o]);
    for (std::size_t o = 0; o < cfg_.cloud_period; ++o) {
      p.demand.emplace_back();
      for (std::size_t i = 0; i < U_; ++i) p.demand.back().push_back(world_.workload.distribution(i, g0 + o));
    }
    complete_plan(p, g0);
    return p;
  }

  PeriodPlan predicted_plan(std::size_t g0) {
    const std::size_t T = cfg_.cloud_period, H = cfg_.mobility_period;
    PeriodPlan p;
    p.pos.assign(T + 1, std::vector<Point>(U_));
    p.demand.assign(T, std::vector<Eigen::VectorXd>(U_));
    for (std::size_t i = 0; i < U_; ++i) {
      const Point now = world_.positions[g0][i];
      std::optional<Eigen::VectorXd> codes;
      if (mobility_esn_[i].fit_sequence(history_[i], cfg_.cycle_units, cfg_.training_window) > 0)
        codes = mobility_esn_[i].predict();
      for (std::size_t o = 0; o <= T; ++o) {
        const auto j = std::min<std::size_t>(
            static_cast<std::size_t>(std::lround(static_cast<double>(o) / static_cast<double>(H))), cfg_.horizon);
        p.pos[o][i] = (j == 0 || !codes) ? now : world_.grid.decode(world_.grid.snap((*codes)(static_cast<Eigen::Index>(j - 1))));
      }

      ContentEsn& esn = content_esn_[i];
      const Eigen::VectorXd saved = esn.state();
      for (std::size_t o = 0; o < T; ++o) {
        const ContextVector x = world_.workload.context(i, g0 + o);
        esn.update_state(x);
        p.demand[o][i] = esn.predict(x).probs();
      }
      esn.set_state(saved);
    }
    complete_plan(p, g0);
    return p;
  }

  std::vector<std::vector<double>> cloud_weights(const PeriodPlan& p, double theta, bool feasible) const {
    std::vector<std::vector<double>> c(p.draws.size(), std::vector<double>(U_, 0.0));
    if (!feasible) return c;
    for (std::size_t o = 0; o < p.draws.size(); ++o)
      for (std::size_t i = 0; i < U_; ++i) c[o][i] = capacity(theta, p.draws[o], i);
    return c;
  }

  std::vector<OracleSlot> oracle_slots(const PeriodPlan& truth, double theta_A, bool feasible) const {
    const auto c = cloud_weights(truth, theta_A, feasible);
    std::vector<OracleSlot> slots;
    for (std::size_t o = 0; o < truth.draws.size(); ++o)
      slots.push_back({truth.serving[o], truth.demand[o], truth.a[o], c[o]});
    return slots;
  }

  std::vector<std::vector<std::size_t>> proposed_rrh_caches(const std::vector<Eigen::VectorXd>& demand,
                                                            const std::vector<std::size_t>& serving,
                                                            const std::vector<double>& a) const {
    std::vector<std::vector<Eigen::VectorXd>> preds(R_);
    std::vector<std::vector<double>> weights(R_);
    for (std::size_t i = 0; i < U_; ++i) {
      preds[serving[i]].push_back(demand[i]);
      weights[serving[i]].push_back(a[i]);
    }
    std::vector<std::vector<std::size_t>> caches(R_);
    for (std::size_t r = 0; r < R_; ++r)
      if (!preds[r].empty()) caches[r] = select_rrh_cache(preds[r], weights[r], cfg_.rrh_capacity, N_);
    return caches;
  }

  std::vector<std::size_t> proposed_cloud(const PeriodPlan& p, double theta_A, bool feasible,
                                          std::size_t period) const {
    const auto c = cloud_weights(p, theta_A, feasible);
    std::vector<DemandRecord> stream;
    stream.reserve(p.draws.size() * U_);
    for (std::size_t o = 0; o < p.draws.size(); ++o) {
      const auto caches = proposed_rrh_caches(p.demand[o], p.serving[o], p.a[o]);
      for (std::size_t i = 0; i < U_; ++i)
        stream.push_back({o, update_distribution(p.demand[o][i], caches[p.serving[o][i]]), c[o][i]});
    }
    const auto est = estimate_popularity(stream, plan_, derive_seed(seed_, "sampling", period));
    return select_cloud_cache(est.popularity, cfg_.cloud_capacity);
  }

  void start_period(std::size_t k, std::size_t g0) {
    const std::size_t period = k / cfg_.cloud_period;
    predicted_.reset();
    truth_.reset();
    if (truth_planning()) truth_ = truth_plan(g0);
    if (use_esn_)
      predicted_ = predicted_plan(g0);
    else
      predicted_ = truth_;

    for (auto& run : runs_) {
      const auto theta = cloud_exponent(run.fronthaul_rate);
      run.theta_A = theta.value_or(0.0);
      run.period_feasible = theta.has_value();
      switch (run.policy) {
        case Policy::Proposed:
          run.cache.set_cloud(proposed_cloud(*predicted_, run.theta_A, run.period_feasible, period));
          break;
        case Policy::RandomClustered:
        case Policy::RandomUnclustered:
          run.cache.set_cloud(random_prefix(N_, cfg_.cloud_capacity, derive_seed(seed_, "random-cloud", period)));
          break;
        case Policy::Oracle: {
          const auto slots = oracle_slots(*truth_, run.theta_A, run.period_feasible);
          run.oracle = solve_oracle(slots, R_, N_, cfg_.cloud_capacity, cfg_.rrh_capacity, options_.oracle_scope,
                                    cfg_.oracle_limit);
          run.cache.set_cloud(run.oracle.cloud);
          break;
        }
      }
      run.report.cloud_trace.push_back(run.cache.cloud());
      if (truth_) run.truth_c = cloud_weights(*truth_, run.theta_A, run.period_feasible);
    }
  }

  void step(std::size_t k) {
    const std::size_t g = cfg_.warmup_slots + k;
    const std::size_t o = k % cfg_.cloud_period;
    record_mobility(g);
    if (o == 0) start_period(k, g);

    std::vector<Eigen::VectorXd> pred(U_);
    std::vector<ContextVector> ctx;
    ctx.reserve(U_);
    for (std::size_t i = 0; i < U_; ++i) {
      ctx.push_back(world_.workload.context(i, g));
      if (use_esn_) {
        content_esn_[i].update_state(ctx[i]);
        pred[i] = content_esn_[i].predict(ctx[i]).probs();
      } else {
        pred[i] = world_.workload.distribution(i, g);
      }
    }
    const auto& pred_serving = predicted_->serving[o];
    const ClusterSet clusters = group_and_cluster(pred, pred_serving, R_, cfg_.chi);

    std::vector<std::size_t> serving(U_), request(U_);
    for (std::size_t i = 0; i < U_; ++i) {
      serving[i] = nearest(world_.positions[g][i], world_.rrhs);
      request[i] = world_.workload.request(i, g, seed_);
      serving_hits_ += pred_serving[i] == serving[i] ? 1.0 : 0.0;
      position_error_ += distance(predicted_->pos[o][i], world_.positions[g][i]);
      content_tv_ += distribution_distance(pred[i], world_.workload.distribution(i, g));
    }

    const std::size_t n = channel_.n_mc();
    const auto active = active_rrhs(serving);
    std::vector<double> clustered, unclustered;
    if (need_clustered_) {
      clustered.resize(U_ * n);
      for (std::size_t i = 0; i < U_; ++i)
        channel_.capacity_draws(world_.positions[g][i], world_.positions[g + 1][i], serving[i],
                                clusters.cooperating(serving[i]), active, derive_seed(seed_, "fading", i, g),
                                std::span<double>(clustered).subspan(i * n, n));
    }
    if (need_unclustered_) {
      unclustered.resize(U_ * n);
      for (std::size_t i = 0; i < U_; ++i) {
        const std::size_t self[] = {serving[i]};
        channel_.capacity_draws(world_.positions[g][i], world_.positions[g + 1][i], serving[i], self, active,
                                derive_seed(seed_, "fading", i, g), std::span<double>(unclustered).subspan(i * n, n));
      }
    }

    std::optional<std::vector<std::vector<std::size_t>>> random_rrh;
    for (auto& run : runs_) {
      switch (run.policy) {
        case Policy::Proposed: {
          const auto caches = proposed_rrh_caches(pred, pred_serving, predicted_->a[o]);
          for (std::size_t r = 0; r < R_; ++r) run.cache.set_rrh(r, caches[r]);
          break;
        }
        case Policy::RandomClustered:
        case Policy::RandomUnclustered:
          if (!random_rrh) {
            random_rrh.emplace(R_);
            for (std::size_t r = 0; r < R_; ++r)
              (*random_rrh)[r] = random_prefix(N_, cfg_.rrh_capacity, derive_seed(seed_, "random-rrh", g, r));
          }
          for (std::size_t r = 0; r < R_; ++r) run.cache.set_rrh(r, (*random_rrh)[r]);
          break;
        case Policy::Oracle:
          for (std::size_t r = 0; r < R_; ++r) run.cache.set_rrh(r, run.oracle.rrh[o][r]);
          break;
      }
      evaluate(run, k, o, serving, request, run.policy == Policy::RandomUnclustered ? unclustered : clustered);
    }

    if (use_esn_)
      for (std::size_t i = 0; i < U_; ++i) content_esn_[i].train_step(ctx[i], truth(i, g));
  }

  void evaluate(Run& run, std::size_t k, std::size_t o, const std::vector<std::size_t>& serving,
                const std::vector<std::size_t>& request, const std::vector<double>& draws) {
    std::vector<DeliveryPath> path(U_);
    std::size_t count[4] = {0, 0, 0, 0};
    for (std::size_t i = 0; i < U_; ++i) {
      const std::size_t r = serving[i], c = request[i];
      if (run.cache.in_rrh(r, c))
        path[i] = DeliveryPath::RrhCache;
      else if (run.cache.in_cloud(c))
        path[i] = DeliveryPath::CloudCache;
      else if (run.cache.in_other_rrh(r, c))
        path[i] = DeliveryPath::RemoteRrh;
      else
        path[i] = DeliveryPath::Server;
      ++count[static_cast<int>(path[i])];
    }
    SlotMetrics m;
    m.slot = k;
    m.backhaul_load = count[3];
    m.fronthaul_load = count[1] + count[2] + count[3];
    const double v_BU = per_content_rate(cfg_.wired.backhaul_rate_bps, m.backhaul_load);
    const double v_FU = per_content_rate(cfg_.wired.fronthaul_rate_bps, m.fronthaul_load);
    for (std::size_t i = 0; i < U_; ++i) {
      const double rate = path[i] == DeliveryPath::Server ? v_BU : v_FU;
      const auto theta = path_exponent(cfg_.theta_O, path[i], cfg_.wired, rate);
      if (!theta) {
        ++m.infeasible;
        continue;
      }
      m.sum_capacity += capacity(*theta, draws, i);
    }
    const double u = static_cast<double>(U_);
    m.hit_rrh = static_cast<double>(count[0]) / u;
    m.hit_cloud = static_cast<double>(count[1]) / u;
    m.hit_remote = static_cast<double>(count[2]) / u;
    m.miss = static_cast<double>(count[3]) / u;
    if (truth_) {
      std::vector<std::vector<std::size_t>> caches(R_);
      for (std::size_t r = 0; r < R_; ++r) caches[r] = run.cache.rrh(r);
      const OracleSlot slot{truth_->serving[o], truth_->demand[o], truth_->a[o], run.truth_c[o]};
      m.planned = planned_objective(slot, run.cache.cloud(), caches);
    } else {
      m.planned = std::numeric_limits<double>::quiet_NaN();
    }
    run.fronthaul_rate = v_FU;
    run.report.slots.push_back(m);
  }

  const SimConfig& cfg_;
  std::uint64_t seed_;
  EpisodeOptions options_;
  World world_;
  ChannelModel channel_;
  SamplingPlan plan_;
  std::size_t U_, R_, N_;
  bool use_esn_ = true;
  bool has_oracle_ = false;
  bool need_clustered_ = false;
  bool need_unclustered_ = false;
  std::vector<Run> runs_;
  std::vector<ContentEsn> content_esn_;
  std::vector<MobilityEsn> mobility_esn_;
  std::vector<std::vector<double>> history_;
  std::optional<PeriodPlan> predicted_;
  std::optional<PeriodPlan> truth_;
  double serving_hits_ = 0.0;
  double position_error_ = 0.0;
  double content_tv_ = 0.0;
};

}  // namespace

std::vector<EpisodeReport> run_episodes(const SimConfig& cfg, std::span<const Policy> policies, std::uint64_t seed,
                                        const EpisodeOptions& options) {
  EpisodeRunner runner(cfg, policies, seed, options);
  return runner.run();
}

EpisodeReport run_episode(const SimConfig& cfg, Policy policy, std::uint64_t seed, const EpisodeOptions& options) {
  const Policy one[] = {policy};
  return run_episodes(cfg, one, seed, options).front();
}

}  // namespace esncache
