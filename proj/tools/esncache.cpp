#include <CLI11.hpp>
#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include <filesystem>
#include <iostream>
#include <optional>

#include "esncache/cli/commands.hpp"
#include "esncache/core/error.hpp"

namespace {

constexpr int kConfigExit = 2;
constexpr int kTooLargeExit = 3;

}  // namespace

int main(int argc, char** argv) {
  auto logger = spdlog::stderr_logger_st("esncache");
  logger->set_pattern("[%l] %v");
  spdlog::set_default_logger(logger);

  CLI::App app{"Proactive caching simulator for cloud radio access networks"};
  app.require_subcommand(1);

  std::optional<std::string> config_path;
  std::optional<std::uint64_t> seed;
  std::string out_dir = "out";
  std::vector<std::string> overrides;
  bool verbose = false;
  app.add_option("--config", config_path, "key = value configuration file");
  app.add_option("--seed", seed, "base seed (overrides the config)");
  app.add_option("--out-dir", out_dir, "directory for output files")->capture_default_str();
  app.add_option("--override", overrides, "KEY=VAL, applied after the config file")->take_all();
  app.add_flag("-v,--verbose", verbose, "debug logging");

  esncache::SimulateOptions sim_opts;
  std::optional<std::string> mobility_trace, content_trace;
  auto* simulate = app.add_subcommand("simulate", "run one episode per policy");
  simulate->add_option("--policy", sim_opts.policy, "all, or proposed|random-cluster|random-nocluster|oracle")
      ->capture_default_str();
  simulate->add_option("--mobility-trace", mobility_trace, "CSV user_id,t,x_m,y_m");
  simulate->add_option("--content-trace", content_trace, "CSV content request trace");

  std::optional<std::string> axis, values;
  std::optional<std::size_t> reps;
  auto* sweep = app.add_subcommand("sweep", "seeded repetitions along one axis");
  sweep->add_option("--axis", axis, "C_c, R, U, epsilon, delta, W or N_tr");
  sweep->add_option("--values", values, "comma-separated axis values");
  sweep->add_option("--reps", reps, "seeds per point");

  esncache::MemcapOptions mem;
  auto* memcap = app.add_subcommand("memcap", "analytic and empirical memory capacity");
  memcap->add_option("--dist", mem.dist, "point, binary or uniform")->capture_default_str();
  memcap->add_option("--a", mem.a, "point/binary amplitude")->capture_default_str();
  memcap->add_option("--lo", mem.lo, "uniform lower end")->capture_default_str();
  memcap->add_option("--hi", mem.hi, "uniform upper end")->capture_default_str();
  memcap->add_option("--w-min", mem.w_min)->capture_default_str();
  memcap->add_option("--w-max", mem.w_max)->capture_default_str();
  memcap->add_option("--empirical-len", mem.empirical_len, "trace length, 0 to skip")->capture_default_str();

  double epsilon = 0.05, delta = 0.05;
  auto* sample_size = app.add_subcommand("sample-size", "Hoeffding sample size");
  sample_size->add_option("--epsilon", epsilon)->capture_default_str();
  sample_size->add_option("--delta", delta)->capture_default_str();

  auto* gen_data = app.add_subcommand("gen-data", "write synthetic content and mobility traces");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigExit;
  }
  if (verbose) spdlog::set_level(spdlog::level::debug);

  try {
    esncache::ExperimentConfig cfg = config_path ? esncache::load_config(*config_path) : esncache::ExperimentConfig{};
    if (seed) cfg.seed = *seed;
    if (axis) overrides.push_back("sweep_axis=" + *axis);
    if (values) overrides.push_back("sweep_values=" + *values);
    if (reps) overrides.push_back("repetitions=" + std::to_string(*reps));
    esncache::apply_overrides(cfg, overrides);
    const std::filesystem::path out(out_dir);

    if (*simulate) {
      if (mobility_trace) sim_opts.mobility_trace = *mobility_trace;
      if (content_trace) sim_opts.content_trace = *content_trace;
      esncache::cmd_simulate(cfg, sim_opts, out);
    } else if (*sweep) {
      esncache::cmd_sweep(cfg, out);
    } else if (*memcap) {
      mem.seed = cfg.seed;
      esncache::cmd_memcap(mem, std::cout);
    } else if (*sample_size) {
      esncache::cmd_sample_size(epsilon, delta, std::cout);
    } else if (*gen_data) {
      esncache::cmd_gen_data(cfg, out);
    }
  } catch (const esncache::InstanceTooLargeError& e) {
    spdlog::error("{}", e.what());
    return kTooLargeExit;
  } catch (const esncache::ConfigError& e) {
    spdlog::error("config: {}", e.what());
    return kConfigExit;
  } catch (const esncache::UnsupportedFamilyError& e) {
    spdlog::error("config: {}", e.what());
    return kConfigExit;
  } catch (const esncache::ParseError& e) {
    spdlog::error("trace: {}", e.what());
    return kConfigExit;
  } catch (const esncache::ValidationError& e) {
    spdlog::error("trace: {}", e.what());
    return kConfigExit;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return 1;
  }
  return 0;
}
