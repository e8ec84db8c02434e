#include <doctest.h>

#include <set>
#include <sstream>
#include <string>

#include "esncache/cli/commands.hpp"
#include "esncache/cli/experiment_config.hpp"
#include "esncache/core/error.hpp"

using namespace esncache;

namespace {

ExperimentConfig tiny() {
  ExperimentConfig cfg;
  apply_overrides(cfg, {"R=3", "U=4", "N=6", "C_c=2", "C_r=1", "T=30", "T_tau=15", "warmup_slots=30",
                        "N_w=40", "n_mc=8", "repetitions=2"});
  return cfg;
}

std::size_t count_lines(const std::string& s) {
  std::size_t n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

}  // namespace

TEST_CASE("config round-trip") {
  const auto cfg = tiny();
  const std::string text = serialize_config(cfg);
  std::istringstream in(text);
  const auto back = parse_config(in);
  CHECK(serialize_config(back) == text);
  CHECK(count_lines(text) == config_keys().size());
  CHECK(get_config_value(back, "R") == "3");
}

TEST_CASE("config comments and defaults") {
  std::istringstream in("# header\n\nC_c = 4   # trailing\nseed=7\n");
  const auto cfg = parse_config(in);
  CHECK(cfg.sim.cloud_capacity == 4);
  CHECK(cfg.seed == 7);
  CHECK(cfg.sim.catalog_size == 50);
}

TEST_CASE("config errors name the line") {
  std::istringstream unknown("C_c = 2\nbogus = 1\n");
  try {
    parse_config(unknown);
    FAIL("expected a config error");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  std::istringstream repeated("C_c = 2\nC_c = 3\n");
  CHECK_THROWS_AS(parse_config(repeated), ConfigError);
  std::istringstream bad_value("R = many\n");
  CHECK_THROWS_AS(parse_config(bad_value), ConfigError);
  std::istringstream invalid("C_c = 80\n");
  CHECK_THROWS_AS(parse_config(invalid), ConfigError);
}

TEST_CASE("overrides apply in order") {
  ExperimentConfig cfg;
  apply_overrides(cfg, {"C_c=1", "C_c=6", "policies=proposed,oracle", "cycle_law=binary"});
  CHECK(cfg.sim.cloud_capacity == 6);
  CHECK(cfg.policies == std::vector<Policy>{Policy::Proposed, Policy::Oracle});
  CHECK(get_config_value(cfg, "cycle_law") == "binary");
  CHECK_THROWS_AS(apply_overrides(cfg, {"C_c"}), ConfigError);
  CHECK_THROWS_AS(apply_overrides(cfg, {"nope=1"}), ConfigError);
}

TEST_CASE("policy resolution") {
  auto cfg = tiny();
  CHECK(resolve_policies("all", cfg.sim).size() == 4);
  CHECK(resolve_policies("proposed,random-nocluster", cfg.sim) ==
        std::vector<Policy>{Policy::Proposed, Policy::RandomUnclustered});
  cfg.sim.oracle_limit = 10.0;
  CHECK(resolve_policies("all", cfg.sim).size() == 3);
  CHECK_THROWS_AS(resolve_policies("proposed,magic", cfg.sim), ConfigError);
}

TEST_CASE("sample size command") {
  std::ostringstream out;
  CHECK(cmd_sample_size(0.05, 0.05, out) == 600);
  CHECK(out.str() == "600\n");
  std::ostringstream one;
  CHECK(cmd_sample_size(0.2, 1.0, one) == 0);
  std::ostringstream fine;
  CHECK(cmd_sample_size(0.03, 0.05, fine) == 1665);
}

TEST_CASE("memcap command") {
  MemcapOptions opt;
  opt.dist = "binary";
  opt.a = 0.9;
  opt.w_min = 10;
  opt.w_max = 10;
  std::ostringstream out;
  cmd_memcap(opt, out);
  const std::string s = out.str();
  CHECK(s.rfind("W,analytic,bound_lo,bound_hi,empirical\n", 0) == 0);
  CHECK(s.find("10,5.1215766") != std::string::npos);
  CHECK(s.find(",0,6,") != std::string::npos);
  CHECK(count_lines(s) == 2);
}

TEST_CASE("single-point sweep emits one row per policy and metric") {
  auto cfg = tiny();
  apply_overrides(cfg, {"sweep_axis=C_c", "sweep_values=2", "repetitions=1"});
  const auto rows = run_sweep(cfg);
  std::set<std::pair<std::string, std::string>> keys;
  for (const auto& r : rows) {
    CHECK(r.axis == "C_c");
    CHECK(r.axis_value == "2");
    keys.emplace(r.policy, r.metric);
  }
  CHECK(keys.size() == rows.size());
  CHECK(rows.size() == cfg.policies.size() * 6);
  std::ostringstream csv;
  write_sweep_csv(csv, rows);
  CHECK(csv.str().rfind("axis,axis_value,policy,seed,metric,metric_value\n", 0) == 0);
  CHECK(count_lines(csv.str()) == rows.size() + 1);
}

TEST_CASE("sampler sweep reports coverage") {
  auto cfg = tiny();
  apply_overrides(cfg, {"sweep_axis=epsilon", "sweep_values=0.05,0.1", "repetitions=1", "coverage_trials=50"});
  const auto rows = run_sweep(cfg);
  bool saw_size = false;
  for (const auto& r : rows) {
    CHECK(r.policy == "sampler");
    if (r.metric == "sample_size" && r.axis_value == "0.05") {
      CHECK(r.value == 600.0);
      saw_size = true;
    }
  }
  CHECK(saw_size);
}
