#include "esncache/cli/commands.hpp"

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <ostream>
#include <thread>

#include "esncache/cache/sampling.hpp"
#include "esncache/core/error.hpp"
#include "esncache/core/rng.hpp"
#include "esncache/data/traces.hpp"
#include "esncache/esn/mobility_esn.hpp"
#include "esncache/sim/oracle.hpp"
#include "esncache/sim/prediction.hpp"
#include "esncache/sim/world.hpp"

namespace esncache {
namespace {

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(fmt::format("cannot write '{}'", path.string()));
  return out;
}

void write_slots(const std::filesystem::path& path, const EpisodeReport& r) {
  auto out = open_output(path);
  out << "k,E_k,hit_O,hit_A,hit_G,miss_S,N_B,N_F\n";
  for (const auto& s : r.slots)
    out << fmt::format("{},{},{},{},{},{},{},{}\n", s.slot, s.sum_capacity, s.hit_rrh, s.hit_cloud, s.hit_remote,
                       s.miss, s.backhaul_load, s.fronthaul_load);
}

void write_cloud_trace(const std::filesystem::path& path, const EpisodeReport& r, std::size_t period) {
  auto out = open_output(path);
  out << "period,k_start,contents\n";
  for (std::size_t p = 0; p < r.cloud_trace.size(); ++p) {
    std::string contents;
    for (std::size_t n : r.cloud_trace[p]) contents += fmt::format("{}{}", contents.empty() ? "" : ";", n + 1);
    out << fmt::format("{},{},{}\n", p, p * period, contents);
  }
}

double mean_of(const std::vector<SlotMetrics>& slots, double SlotMetrics::*field) {
  double total = 0.0;
  for (const auto& s : slots) total += s.*field;
  return slots.empty() ? 0.0 : total / static_cast<double>(slots.size());
}

double mean_count(const std::vector<SlotMetrics>& slots, std::size_t SlotMetrics::*field) {
  double total = 0.0;
  for (const auto& s : slots) total += static_cast<double>(s.*field);
  return slots.empty() ? 0.0 : total / static_cast<double>(slots.size());
}

void write_summary(const std::filesystem::path& path, const EpisodeReport& r) {
  nlohmann::ordered_json j;
  j["policy"] = policy_name(r.policy);
  j["seed"] = r.seed;
  j["slots"] = r.slots.size();
  j["E_bar"] = r.mean_capacity;
  if (std::isnan(r.mean_planned))
    j["E_bar_planned"] = nullptr;
  else
    j["E_bar_planned"] = r.mean_planned;
  j["hit_O"] = mean_of(r.slots, &SlotMetrics::hit_rrh);
  j["hit_A"] = mean_of(r.slots, &SlotMetrics::hit_cloud);
  j["hit_G"] = mean_of(r.slots, &SlotMetrics::hit_remote);
  j["miss_S"] = mean_of(r.slots, &SlotMetrics::miss);
  j["N_B"] = mean_count(r.slots, &SlotMetrics::backhaul_load);
  j["N_F"] = mean_count(r.slots, &SlotMetrics::fronthaul_load);
  j["infeasible_requests"] = r.infeasible;
  j["serving_accuracy"] = r.prediction.serving_accuracy;
  j["position_error_m"] = r.prediction.position_error_m;
  j["content_tv"] = r.prediction.content_tv;
  auto out = open_output(path);
  out << j.dump(2) << "\n";
}

std::vector<SweepRow> episode_rows(const ExperimentConfig& cfg, const std::string& value, std::uint64_t seed) {
  std::vector<SweepRow> rows;
  for (const auto& r : run_episodes(cfg.sim, cfg.policies, seed)) {
    const std::string policy(policy_name(r.policy));
    auto add = [&](const char* metric, double v) { rows.push_back({cfg.sweep_axis, value, policy, seed, metric, v}); };
    add("E_bar", r.mean_capacity);
    add("hit_O", mean_of(r.slots, &SlotMetrics::hit_rrh));
    add("hit_A", mean_of(r.slots, &SlotMetrics::hit_cloud));
    add("hit_G", mean_of(r.slots, &SlotMetrics::hit_remote));
    add("miss_S", mean_of(r.slots, &SlotMetrics::miss));
    add("infeasible", static_cast<double>(r.infeasible));
  }
  return rows;
}

// Hoeffding coverage on one-hot request records from the synthetic workload.
std::vector<SweepRow> coverage_rows(const ExperimentConfig& cfg, const std::string& value, std::uint64_t seed) {
  const SimConfig& sim = cfg.sim;
  const Workload workload = generate_workload(sim.workload(), derive_seed(seed, "workload"));
  std::vector<DemandRecord> stream;
  for (std::size_t o = 0; o < sim.cloud_period; ++o)
    for (std::size_t i = 0; i < sim.users; ++i) {
      Eigen::VectorXd hot = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(sim.catalog_size));
      hot(static_cast<Eigen::Index>(workload.request(i, o, seed))) = 1.0;
      stream.push_back({o, std::move(hot), 1.0});
    }
  const SamplingPlan plan = SamplingPlan::make(sim.epsilon, sim.delta);
  const CoverageResult c = sampling_coverage(stream, plan, cfg.coverage_trials, derive_seed(seed, "coverage"));
  return {{cfg.sweep_axis, value, "sampler", seed, "sample_size", static_cast<double>(plan.sample_size)},
          {cfg.sweep_axis, value, "sampler", seed, "failure_rate", c.failure_rate},
          {cfg.sweep_axis, value, "sampler", seed, "mean_error", c.mean_error}};
}

std::vector<SweepRow> mobility_rows(const ExperimentConfig& cfg, const std::string& value, std::uint64_t seed) {
  const MobilityAccuracy m = evaluate_mobility_prediction(cfg.sim, seed);
  return {{cfg.sweep_axis, value, "mobility-esn", seed, "position_error_m", m.position_error_m},
          {cfg.sweep_axis, value, "mobility-esn", seed, "cell_accuracy", m.cell_accuracy},
          {cfg.sweep_axis, value, "mobility-esn", seed, "serving_accuracy", m.serving_accuracy}};
}

}  // namespace

std::vector<Policy> resolve_policies(const std::string& arg, const SimConfig& cfg) {
  if (arg == "all") {
    std::vector<Policy> out = {Policy::Proposed, Policy::RandomClustered, Policy::RandomUnclustered};
    if (oracle_search_size(cfg.catalog_size, cfg.cloud_capacity, cfg.rrh_capacity, cfg.rrhs) <= cfg.oracle_limit)
      out.push_back(Policy::Oracle);
    else
      spdlog::warn("oracle skipped: exhaustive search exceeds oracle_limit");
    return out;
  }
  std::vector<Policy> out;
  std::string_view rest = arg;
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    out.push_back(parse_policy(rest.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  if (out.empty()) throw ConfigError("--policy names no policy");
  return out;
}

std::vector<EpisodeReport> cmd_simulate(const ExperimentConfig& cfg, const SimulateOptions& options,
                                        const std::filesystem::path& out_dir) {
  const auto policies = resolve_policies(options.policy, cfg.sim);
  TraceStream content, mobility;
  EpisodeOptions ep;
  if (options.content_trace) {
    content = load_traces(*options.content_trace, TraceKind::Content, cfg.sim.radio.cell_radius_m);
    ep.traces.content = &content.content;
  }
  if (options.mobility_trace) {
    mobility = load_traces(*options.mobility_trace, TraceKind::Mobility, cfg.sim.radio.cell_radius_m);
    ep.traces.mobility = &mobility.mobility;
  }
  std::filesystem::create_directories(out_dir);
  open_output(out_dir / "config.cfg") << serialize_config(cfg);
  auto reports = run_episodes(cfg.sim, policies, cfg.seed, ep);
  for (const auto& r : reports) {
    const std::string name(policy_name(r.policy));
    write_slots(out_dir / (name + "_slots.csv"), r);
    write_summary(out_dir / (name + "_summary.json"), r);
    write_cloud_trace(out_dir / (name + "_cloud_cache.csv"), r, cfg.sim.cloud_period);
    spdlog::info("{}: E_bar = {}", name, r.mean_capacity);
  }
  return reports;
}

std::vector<SweepRow> run_sweep(const ExperimentConfig& cfg) {
  cfg.validate();
  struct Task {
    ExperimentConfig cfg;
    std::string value;
    std::uint64_t seed;
  };
  std::vector<Task> tasks;
  for (const auto& value : cfg.sweep_values) {
    ExperimentConfig point = cfg;
    set_config_value(point, cfg.sweep_axis, value);
    point.validate();
    for (std::size_t r = 0; r < cfg.repetitions; ++r) tasks.push_back({point, value, cfg.seed + r});
  }

  const std::string& axis = cfg.sweep_axis;
  auto run_task = [&](const Task& t) {
    if (axis == "epsilon" || axis == "delta") return coverage_rows(t.cfg, t.value, t.seed);
    if (axis == "W" || axis == "N_tr") return mobility_rows(t.cfg, t.value, t.seed);
    return episode_rows(t.cfg, t.value, t.seed);
  };

  std::vector<std::vector<SweepRow>> results(tasks.size());
  std::vector<std::exception_ptr> errors(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        results[i] = run_task(tasks[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()), tasks.size());
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  std::vector<SweepRow> rows;
  for (auto& r : results) rows.insert(rows.end(), r.begin(), r.end());
  return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "axis,axis_value,policy,seed,metric,metric_value\n";
  for (const auto& r : rows)
    out << fmt::format("{},{},{},{},{},{}\n", r.axis, r.axis_value, r.policy, r.seed, r.metric, r.value);
}

std::vector<SweepRow> cmd_sweep(const ExperimentConfig& cfg, const std::filesystem::path& out_dir) {
  auto rows = run_sweep(cfg);
  std::filesystem::create_directories(out_dir);
  auto out = open_output(out_dir / ("sweep_" + cfg.sweep_axis + ".csv"));
  write_sweep_csv(out, rows);
  return rows;
}

void cmd_memcap(const MemcapOptions& o, std::ostream& out) {
  if (o.w_min == 0 || o.w_max < o.w_min) throw ConfigError("memcap needs 1 <= w-min <= w-max");
  WeightDistribution spec = [&] {
    if (o.dist == "point") return WeightDistribution::point_mass(o.a);
    if (o.dist == "binary") return WeightDistribution::symmetric_binary(o.a);
    if (o.dist == "uniform") return WeightDistribution::uniform(o.lo, o.hi);
    throw ConfigError("--dist must be point, binary or uniform");
  }();
  out << "W,analytic,bound_lo,bound_hi,empirical\n";
  for (std::size_t w = o.w_min; w <= o.w_max; ++w) {
    const double analytic = memory_capacity(spec, w);
    const CapacityBounds b = memory_capacity_bounds(spec, w);
    std::string empirical;
    if (o.empirical_len > 0) {
      const MobilityEsn esn(w, 1, spec, 0.0, derive_seed(o.seed, "memcap-esn", w));
      empirical = fmt::format("{}", empirical_memory_capacity(esn, w, o.empirical_len, derive_seed(o.seed, "memcap", w)));
    }
    out << fmt::format("{},{},{},{},{}\n", w, analytic, b.lo, b.hi, empirical);
  }
}

std::size_t cmd_sample_size(double epsilon, double delta, std::ostream& out) {
  const std::size_t n = hoeffding_sample_size(epsilon, delta);
  out << n << "\n";
  return n;
}

void cmd_gen_data(const ExperimentConfig& cfg, const std::filesystem::path& out_dir) {
  cfg.validate();
  const World world = build_world(cfg.sim, cfg.seed);
  const std::size_t total = cfg.sim.warmup_slots + cfg.sim.slots;
  std::filesystem::create_directories(out_dir);
  {
    auto out = open_output(out_dir / "content_trace.csv");
    write_content_trace(out, world.workload.request_stream(total, cfg.seed));
  }
  std::vector<MobilityTraceRecord> rows;
  for (std::size_t t = 0; t <= total; ++t)
    for (std::size_t i = 0; i < cfg.sim.users; ++i)
      rows.push_back({i, t, world.positions[t][i].x, world.positions[t][i].y});
  auto out = open_output(out_dir / "mobility_trace.csv");
  write_mobility_trace(out, rows);
}

}  // namespace esncache
