#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "fairshare/audit.hpp"
#include "fairshare/core.hpp"
#include "fairshare/experiments.hpp"
#include "fairshare/instances.hpp"
#include "fairshare/mechanisms.hpp"
#include "fairshare/rng.hpp"
#include "fairshare/serialization.hpp"

namespace {

using namespace fairshare;

constexpr int kExitOk = 0;
constexpr int kExitPropertyFailed = 1;
constexpr int kExitInputError = 2;
constexpr int kExitBudgetExceeded = 3;

Tolerances tolerances_from_env() {
  Tolerances tol;
  if (const char* raw = std::getenv("FAIRSHARE_TOL")) {
    char* end = nullptr;
    const double value = std::strtod(raw, &end);
    if (end != raw && value > 0.0) tol.tie = value;
  }
  return tol;
}

void print_costs(const CostVector& costs) {
  std::printf("costs:");
  for (double c : costs) std::printf(" %.6f", c);
  std::printf("\n");
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << text << '\n';
  if (!out.good()) throw IoError("failed writing " + path);
}

int cmd_solve(const std::string& mechanism, const std::string& instance_path,
              const std::optional<std::string>& out_path, std::uint64_t seed,
              const Tolerances& tol) {
  const Instance instance = read_instance(instance_path);
  if (mechanism == "drfw" || mechanism == "sjf") {
    Schedule schedule;
    if (mechanism == "drfw") {
      schedule = run_drf_w(instance, tol);
    } else {
      const auto orders = enumerate_sjf_orders(instance, tol);
      Xoshiro256pp rng(substream_key(seed, 0x736a66ULL, 0));
      schedule = run_sjf(instance, orders[rng.uniform_int(orders.size())]);
    }
    print_costs(schedule.completion_times);
    std::printf("log_cost_product: %.6f\n",
                log_cost_product(schedule.completion_times));
    if (out_path) write_text(*out_path, schedule_to_json(schedule).dump(2));
    return kExitOk;
  }
  if (mechanism == "lcpx") {
    const LcpResult result = run_lcp_x(instance, 10'000'000, tol);
    if (result.budget_exceeded || result.optima.empty()) {
      std::fprintf(stderr, "lcpx: node budget exceeded (%llu states)\n",
                   static_cast<unsigned long long>(result.explored));
      return kExitBudgetExceeded;
    }
    print_costs(result.optima.front().completion_times);
    std::printf("log_cost_product: %.6f\n", result.log_cost_product);
    if (result.optima.size() > 1) {
      std::printf("co-optima: %zu\n", result.optima.size());
    }
    if (out_path) {
      nlohmann::ordered_json j = nlohmann::ordered_json::array();
      for (const Schedule& schedule : result.optima) {
        j.push_back(schedule_to_json(schedule));
      }
      write_text(*out_path, j.dump(2));
    }
    return kExitOk;
  }
  throw ValidationError("unknown mechanism \"" + mechanism + "\"");
}

ScheduleDistribution mechanism_distribution(const Instance& instance,
                                            const std::string& mechanism,
                                            const Tolerances& tol) {
  ScheduleDistribution dist;
  if (mechanism == "drfw") {
    dist.emplace_back(run_drf_w(instance, tol), 1.0);
  } else if (mechanism == "sjf") {
    for (const SjfOrder& order : enumerate_sjf_orders(instance, tol)) {
      dist.emplace_back(run_sjf(instance, order), order.probability);
    }
  } else if (mechanism == "lcpx") {
    const LcpResult result = run_lcp_x(instance, 10'000'000, tol);
    if (result.budget_exceeded || result.optima.empty()) {
      throw Error("lcpx: node budget exceeded");
    }
    const double p = 1.0 / static_cast<double>(result.optima.size());
    for (const Schedule& schedule : result.optima) {
      dist.emplace_back(schedule, p);
    }
  } else {
    throw ValidationError("unknown mechanism \"" + mechanism + "\"");
  }
  return dist;
}

int cmd_audit(const std::string& instance_path,
              const std::optional<std::string>& schedule_path,
              const std::optional<std::string>& mechanism,
              const Tolerances& tol) {
  const Instance instance = read_instance(instance_path);
  ScheduleDistribution dist;
  if (schedule_path) {
    std::ifstream in(*schedule_path);
    if (!in) throw IoError("cannot open " + *schedule_path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    dist.emplace_back(
        schedule_from_json(instance, parse_json(buffer.str(), *schedule_path), tol),
        1.0);
  } else {
    dist = mechanism_distribution(instance, *mechanism, tol);
  }
  const AuditReport report = audit_schedules(instance, dist, tol);
  std::printf("%s\n", audit_report_to_json(report).dump(2).c_str());
  return report.ef && report.si ? kExitOk : kExitPropertyFailed;
}

int cmd_experiment(const Table1Config& config,
                   const std::string& out_path,
                   const std::optional<std::string>& dump_path,
                   const Tolerances& tol) {
  std::vector<InstanceRecord> records;
  const ExperimentSummary summary =
      run_table1(config, tol, dump_path ? &records : nullptr);
  write_csv(summary, out_path);

  std::printf("%-3s %-6s %-8s %-8s %-8s %-8s %-8s %-8s %-8s %-8s %-8s %-8s\n",
              "n", "count", "ef_lcpx", "ef_drfw", "si_lcpx", "si_drfw",
              "ms_lcpx", "ms_drfw", "ms_eq", "mct_lcpx", "mct_drfw", "dom");
  for (const SummaryRow& r : summary.rows) {
    std::printf(
        "%-3d %-6d %-8.2f %-8.2f %-8.2f %-8.2f %-8.2f %-8.2f %-8.2f %-8.2f "
        "%-8.2f %-8.2f\n",
        r.n, r.count, r.lcpx_ef_pct, r.drfw_ef_pct, r.lcpx_si_pct,
        r.drfw_si_pct, r.lcpx_lower_makespan_pct, r.drfw_lower_makespan_pct,
        r.equal_makespan_pct, r.lcpx_lower_mct_pct, r.drfw_lower_mct_pct,
        r.lcpx_pareto_dominates_pct);
  }

  if (dump_path) {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const InstanceRecord& r : records) {
      nlohmann::ordered_json jr;
      jr["n"] = r.n;
      jr["index"] = r.index;
      jr["skipped"] = r.skipped;
      jr["lcpx_log_cp"] = r.lcpx_log_cp;
      jr["drfw_log_cp"] = r.drfw_log_cp;
      jr["lcpx_makespan"] = r.lcpx_makespan;
      jr["drfw_makespan"] = r.drfw_makespan;
      jr["lcpx_mct"] = r.lcpx_mct;
      jr["drfw_mct"] = r.drfw_mct;
      jr["lcpx_ef"] = r.lcpx_ef;
      jr["drfw_ef"] = r.drfw_ef;
      jr["lcpx_si"] = r.lcpx_si;
      jr["drfw_si"] = r.drfw_si;
      jr["lcpx_dominates"] = r.lcpx_dominates;
      j.push_back(std::move(jr));
    }
    write_text(*dump_path, j.dump());
  }
  return kExitOk;
}

bool check(bool ok, const std::string& what) {
  std::printf("%s %s\n", ok ? "PASS" : "FAIL", what.c_str());
  return ok;
}

bool costs_match(const CostVector& got, const std::vector<double>& want) {
  if (got.size() != want.size()) return false;
  for (std::size_t i = 0; i < got.size(); ++i) {
    if (std::abs(got[i] - want[i]) > 1e-9) return false;
  }
  return true;
}

int cmd_fixtures(const std::string& name,
                 const std::optional<std::string>& dump_path,
                 const Tolerances& tol) {
  const Fixture fixture = canned(name);
  if (dump_path) write_instance(fixture.instance, *dump_path);

  bool all_ok = true;
  if (fixture.tie_crossover_n) {
    int crossover = -1;
    bool beats_extreme1 = true;
    for (int n = 3; n <= 500; ++n) {
      const TieCosts costs = closed_form_tie_costs(n);
      if (costs.tie >= costs.extreme1) beats_extreme1 = false;
      if (crossover < 0 && costs.tie < costs.extreme2) crossover = n;
    }
    std::printf("crossover n = %d\n", crossover);
    all_ok &= check(beats_extreme1, "tie beats extreme-1 for n in [3, 500]");
    all_ok &= check(crossover == *fixture.tie_crossover_n,
                    "tie overtakes extreme-2 at n = " +
                        std::to_string(*fixture.tie_crossover_n));
    return all_ok ? kExitOk : kExitPropertyFailed;
  }

  if (fixture.drfw_costs || fixture.drfw_ef) {
    const Schedule drfw = run_drf_w(fixture.instance, tol);
    if (fixture.drfw_costs) {
      print_costs(drfw.completion_times);
      all_ok &= check(costs_match(drfw.completion_times, *fixture.drfw_costs),
                      "drfw completion times");
    }
    if (fixture.drfw_ef) {
      const auto envy = check_ef(fixture.instance, {{drfw, 1.0}}, tol);
      all_ok &= check(envy.empty() == *fixture.drfw_ef, "drfw envy-freeness");
    }
  }
  if (fixture.lcpx_costs) {
    const LcpResult result = run_lcp_x(fixture.instance, 10'000'000, tol);
    if (result.budget_exceeded || result.optima.empty()) {
      throw Error("lcpx: node budget exceeded");
    }
    const Schedule& schedule = result.optima.front();
    print_costs(schedule.completion_times);
    all_ok &= check(costs_match(schedule.completion_times, *fixture.lcpx_costs),
                    "lcpx completion times");
    if (fixture.lcpx_log_cost_product) {
      all_ok &= check(std::abs(result.log_cost_product -
                               *fixture.lcpx_log_cost_product) <= 1e-9,
                      "lcpx log cost product");
    }
    if (fixture.lcpx_first_shares) {
      all_ok &= check(costs_match(schedule.segments.front().shares.shares,
                                  *fixture.lcpx_first_shares),
                      "lcpx first-interval shares");
    }
    if (!fixture.lcpx_envy_pairs.empty()) {
      ScheduleDistribution dist;
      const double p = 1.0 / static_cast<double>(result.optima.size());
      for (const Schedule& s : result.optima) dist.emplace_back(s, p);
      const auto envy = check_ef(fixture.instance, dist, tol);
      bool match = envy.size() == fixture.lcpx_envy_pairs.size();
      for (const auto& [i, j] : fixture.lcpx_envy_pairs) {
        bool found = false;
        for (const EnvyPair& pair : envy) {
          found |= pair.envious == i && pair.envied == j;
        }
        match &= found;
      }
      all_ok &= check(match, "lcpx envy pairs");
    }
  }
  return all_ok ? kExitOk : kExitPropertyFailed;
}

int cmd_oracle(const std::string& instance_path, int grid,
               const Tolerances& tol) {
  const Instance instance = read_instance(instance_path);
  const double oracle = grid_oracle_two_agents(instance, grid);
  const LcpResult result = run_lcp_x(instance, 10'000'000, tol);
  if (result.budget_exceeded || result.optima.empty()) {
    throw Error("lcpx: node budget exceeded");
  }
  std::printf("grid_minimum_log_cp: %.9f\n", oracle);
  std::printf("lcpx_log_cp: %.9f\n", result.log_cost_product);
  return kExitOk;
}

int cmd_probe(int trials, std::uint64_t seed) {
  const auto violations = quasiconcavity_probe(trials, seed);
  std::printf("segments checked: %d\n", trials);
  std::printf("violations: %zu\n", violations.size());
  for (const ProbeViolation& v : violations) {
    std::printf("  trial %llu theta %.1f cp %.9g < floor %.9g\n",
                static_cast<unsigned long long>(v.trial), v.theta, v.cp_mid,
                v.cp_endpoint_min);
  }
  return violations.empty() ? kExitOk : kExitPropertyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-resource allocation mechanisms with fairness auditing"};
  app.require_subcommand(1);
  const Tolerances tol = tolerances_from_env();

  std::string mechanism;
  std::string instance_path;
  std::string out_path;
  std::string schedule_path;
  std::string fixture_name;
  std::string dump_path;
  std::uint64_t seed = 42;
  int n_from = 2, n_to = 5, count = 500, workers = 1;
  int grid = 2000, trials = 1000;

  auto* solve = app.add_subcommand("solve", "Run one mechanism on an instance");
  solve->add_option("--mechanism", mechanism, "drfw, sjf or lcpx")->required();
  solve->add_option("--instance", instance_path, "instance JSON")->required();
  solve->add_option("--out", out_path, "write schedule JSON here");
  solve->add_option("--seed", seed, "tie-break seed for sjf");

  auto* audit = app.add_subcommand("audit", "Audit a schedule or mechanism");
  audit->add_option("--instance", instance_path, "instance JSON")->required();
  auto* opt_schedule = audit->add_option("--schedule", schedule_path, "schedule JSON");
  auto* opt_mechanism = audit->add_option("--mechanism", mechanism, "drfw, sjf or lcpx");
  opt_schedule->excludes(opt_mechanism);

  auto* experiment = app.add_subcommand("experiment", "Batch comparison table");
  experiment->add_option("--n-from", n_from, "smallest agent count");
  experiment->add_option("--n-to", n_to, "largest agent count");
  experiment->add_option("--count", count, "instances per agent count");
  experiment->add_option("--seed", seed, "batch seed");
  experiment->add_option("--out", out_path, "CSV output path")->required();
  experiment->add_option("--workers", workers, "parallel workers");
  experiment->add_option("--dump-records", dump_path, "per-instance JSON dump");

  auto* fixtures = app.add_subcommand("fixtures", "Verify a canned instance");
  fixtures->add_option("--name", fixture_name, "fixture name")->required();
  fixtures->add_option("--dump", dump_path, "write the instance JSON here");

  auto* oracle = app.add_subcommand("oracle", "Two-agent grid search check");
  oracle->add_option("--instance", instance_path, "instance JSON")->required();
  oracle->add_option("--grid", grid, "grid steps");

  auto* probe = app.add_subcommand("probe", "Quasiconcavity probe");
  probe->add_option("--trials", trials, "order-consistent segments to check");
  probe->add_option("--seed", seed, "probe seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInputError;
  }

  try {
    if (solve->parsed()) {
      return cmd_solve(mechanism, instance_path,
                       out_path.empty() ? std::nullopt
                                        : std::optional<std::string>(out_path),
                       seed, tol);
    }
    if (audit->parsed()) {
      if (opt_schedule->count() == 0 && opt_mechanism->count() == 0) {
        std::fprintf(stderr, "audit: need --schedule or --mechanism\n");
        return kExitInputError;
      }
      return cmd_audit(instance_path,
                       opt_schedule->count()
                           ? std::optional<std::string>(schedule_path)
                           : std::nullopt,
                       opt_mechanism->count()
                           ? std::optional<std::string>(mechanism)
                           : std::nullopt,
                       tol);
    }
    if (experiment->parsed()) {
      if (n_from < 1 || n_to < n_from || count < 1 || workers < 1) {
        std::fprintf(stderr, "experiment: bounds out of range\n");
        return kExitInputError;
      }
      Table1Config config;
      config.seed = seed;
      config.n_from = n_from;
      config.n_to = n_to;
      config.count = count;
      config.workers = workers;
      return cmd_experiment(config, out_path,
                            dump_path.empty()
                                ? std::nullopt
                                : std::optional<std::string>(dump_path),
                            tol);
    }
    if (fixtures->parsed()) {
      return cmd_fixtures(fixture_name,
                          dump_path.empty()
                              ? std::nullopt
                              : std::optional<std::string>(dump_path),
                          tol);
    }
    if (oracle->parsed()) return cmd_oracle(instance_path, grid, tol);
    if (probe->parsed()) return cmd_probe(trials, seed);
  } catch (const fairshare::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInputError;
  }
  return kExitInputError;
}
