#include "fairshare/experiments.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <thread>

#include "fairshare/audit.hpp"
#include "fairshare/mechanisms.hpp"
#include "fairshare/rng.hpp"

namespace fairshare {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

CostVector expected_costs(const std::vector<Schedule>& optima) {
  CostVector costs(optima.front().completion_times.size(), 0.0);
  const double p = 1.0 / static_cast<double>(optima.size());
  for (const Schedule& schedule : optima) {
    for (std::size_t i = 0; i < costs.size(); ++i) {
      costs[i] += p * schedule.completion_times[i];
    }
  }
  return costs;
}

InstanceRecord evaluate_instance(const Instance& instance, int n,
                                 std::uint64_t index,
                                 const Table1Config& config,
                                 const Tolerances& tol) {
  InstanceRecord record;
  record.n = n;
  record.index = index;

  const Schedule drfw = run_drf_w(instance, tol);
  const LcpResult lcp = run_lcp_x(instance, config.lcp_budget, tol);
  if (lcp.budget_exceeded || lcp.optima.empty()) {
    record.skipped = true;
    return record;
  }

  ScheduleDistribution lcp_dist;
  const double p = 1.0 / static_cast<double>(lcp.optima.size());
  for (const Schedule& schedule : lcp.optima) lcp_dist.emplace_back(schedule, p);

  const AuditReport lcp_report = audit_schedules(instance, lcp_dist, tol);
  const AuditReport drfw_report =
      audit_schedules(instance, {{drfw, 1.0}}, tol);

  record.lcpx_log_cp = lcp.log_cost_product;
  record.drfw_log_cp = log_cost_product(drfw.completion_times);
  record.lcpx_makespan = lcp_report.makespan;
  record.drfw_makespan = drfw_report.makespan;
  record.lcpx_mct = lcp_report.mean_completion;
  record.drfw_mct = drfw_report.mean_completion;
  record.lcpx_ef = lcp_report.ef;
  record.drfw_ef = drfw_report.ef;
  record.lcpx_si = lcp_report.si;
  record.drfw_si = drfw_report.si;

  record.lcpx_dominates =
      pareto_compare(expected_costs(lcp.optima), drfw.completion_times, tol) ==
      ParetoOrder::A_dominates;

  if (nearly_equal(record.lcpx_makespan, record.drfw_makespan, tol.tie)) {
    record.makespan_bucket = 2;
  } else {
    record.makespan_bucket = record.lcpx_makespan < record.drfw_makespan ? 0 : 1;
  }
  if (nearly_equal(record.lcpx_mct, record.drfw_mct, tol.tie)) {
    record.mct_bucket = 2;
  } else {
    record.mct_bucket = record.lcpx_mct < record.drfw_mct ? 0 : 1;
  }
  return record;
}

SummaryRow summarize(int n, const std::vector<InstanceRecord>& records) {
  SummaryRow row;
  row.n = n;
  int used = 0;
  double lcpx_mct_lower = 0.0;
  double drfw_mct_lower = 0.0;
  int ef_l = 0, ef_d = 0, si_l = 0, si_d = 0, dom = 0;
  int ms_l = 0, ms_d = 0, ms_eq = 0;
  for (const InstanceRecord& r : records) {
    if (r.skipped) {
      ++row.skipped;
      continue;
    }
    ++used;
    ef_l += r.lcpx_ef;
    ef_d += r.drfw_ef;
    si_l += r.lcpx_si;
    si_d += r.drfw_si;
    dom += r.lcpx_dominates;
    ms_l += r.makespan_bucket == 0;
    ms_d += r.makespan_bucket == 1;
    ms_eq += r.makespan_bucket == 2;
    // Ties in mean completion time are split evenly between the two rows.
    if (r.mct_bucket == 2) {
      ++row.equal_mct_count;
      lcpx_mct_lower += 0.5;
      drfw_mct_lower += 0.5;
    } else if (r.mct_bucket == 0) {
      lcpx_mct_lower += 1.0;
    } else {
      drfw_mct_lower += 1.0;
    }
  }
  row.count = used;
  if (used == 0) return row;
  const double scale = 100.0 / used;
  row.lcpx_ef_pct = scale * ef_l;
  row.drfw_ef_pct = scale * ef_d;
  row.lcpx_si_pct = scale * si_l;
  row.drfw_si_pct = scale * si_d;
  row.lcpx_lower_makespan_pct = scale * ms_l;
  row.drfw_lower_makespan_pct = scale * ms_d;
  row.equal_makespan_pct = scale * ms_eq;
  row.lcpx_lower_mct_pct = scale * lcpx_mct_lower;
  row.drfw_lower_mct_pct = scale * drfw_mct_lower;
  row.lcpx_pareto_dominates_pct = scale * dom;
  return row;
}

// Grid oracle helper: first agent a at rate la, then the other alone.
double serial_order_log_cp(double k_first, double rate_first, double k_second,
                           double rate_second) {
  if (rate_first <= 0.0) return kInf;
  const double t_first = k_first / rate_first;
  const double left = k_second - rate_second * t_first;
  if (left < 0.0) return kInf;  // wrong order; the swapped call covers it
  const double t_second = t_first + left;
  return std::log(t_first) + std::log(t_second);
}

// Cost product with agent `a` finishing first and the survivor alone at
// rate 1 afterwards. long double keeps rounding noise far below the 1e-7
// slack the probe asserts.
long double order_cost_product(double ka, double la, double kb, double lb) {
  const long double ta = static_cast<long double>(ka) / la;
  const long double tb = ta + (kb - static_cast<long double>(lb) * ta);
  return ta * tb;
}

}  // namespace

ExperimentSummary run_table1(const Table1Config& config, const Tolerances& tol,
                             std::vector<InstanceRecord>* records_out) {
  ExperimentSummary summary;
  for (int n = config.n_from; n <= config.n_to; ++n) {
    std::vector<InstanceRecord> records(config.count);
    GenConfig gen{config.seed, n, config.m_min, config.m_max, config.k_max};

    auto work_on = [&](std::uint64_t index) {
      const Instance instance = random_instance(gen, index);
      records[index] = evaluate_instance(instance, n, index, config, tol);
    };

    const int workers = std::max(1, config.workers);
    if (workers == 1) {
      for (int i = 0; i < config.count; ++i) work_on(i);
    } else {
      std::atomic<int> next{0};
      std::vector<std::thread> pool;
      pool.reserve(workers);
      for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&]() {
          for (;;) {
            const int i = next.fetch_add(1);
            if (i >= config.count) return;
            work_on(i);
          }
        });
      }
      for (auto& t : pool) t.join();
    }

    summary.rows.push_back(summarize(n, records));
    if (records_out) {
      records_out->insert(records_out->end(), records.begin(), records.end());
    }
  }
  return summary;
}

double grid_oracle_two_agents(const Instance& instance, int grid) {
  if (instance.agent_count() != 2) {
    throw NotTwoAgents("grid oracle handles exactly two agents");
  }
  if (grid < 1) throw Error("grid must be positive");
  const auto& d1 = instance.demands[0];
  const auto& d2 = instance.demands[1];
  const double k1 = instance.work[0];
  const double k2 = instance.work[1];
  const int m = instance.resource_count();

  double best = kInf;
  for (int g = 0; g <= grid; ++g) {
    const double l1 = static_cast<double>(g) / grid;
    double l2 = kInf;
    for (int r = 0; r < m; ++r) {
      if (d2[r] > 0.0) l2 = std::min(l2, (1.0 - l1 * d1[r]) / d2[r]);
    }
    l2 = std::max(l2, 0.0);
    best = std::min(best, serial_order_log_cp(k1, l1, k2, l2));
    best = std::min(best, serial_order_log_cp(k2, l2, k1, l1));
  }
  return best;
}

std::vector<ProbeViolation> quasiconcavity_probe(int trials,
                                                 std::uint64_t seed) {
  if (trials < 1) throw Error("trials must be positive");
  std::vector<ProbeViolation> violations;
  std::uint64_t attempts = 0;
  const std::uint64_t max_attempts = 100ULL * static_cast<std::uint64_t>(trials);
  int checked = 0;

  while (checked < trials && attempts < max_attempts) {
    const std::uint64_t attempt = attempts++;
    const Instance instance =
        random_instance(GenConfig{seed, 2, 1, 10, 100.0}, attempt);
    Xoshiro256pp rng(substream_key(seed ^ 0x70726f6265ULL, 2, attempt));

    // Two feasible first-interval share pairs, scaled inside the polytope.
    auto sample_shares = [&]() {
      double l1 = rng.uniform_open01();
      double l2 = rng.uniform_open01();
      double load = 0.0;
      for (int r = 0; r < instance.resource_count(); ++r) {
        load = std::max(load, l1 * instance.demands[0][r] +
                                  l2 * instance.demands[1][r]);
      }
      if (load > 1.0) {
        l1 /= load;
        l2 /= load;
      }
      return std::pair<double, double>{l1, l2};
    };
    const auto [a1, a2] = sample_shares();
    const auto [b1, b2] = sample_shares();
    const double k1 = instance.work[0];
    const double k2 = instance.work[1];

    // Keep only segments where the same agent finishes first at every
    // probe point; otherwise the cost-product formula changes shape.
    const bool first_is_1 = k1 / a1 <= k2 / a2;
    bool consistent = true;
    long double cps[11];
    for (int s = 0; s <= 10 && consistent; ++s) {
      const double theta = s / 10.0;
      const double l1 = theta * a1 + (1.0 - theta) * b1;
      const double l2 = theta * a2 + (1.0 - theta) * b2;
      if (l1 <= 0.0 || l2 <= 0.0 || (k1 / l1 <= k2 / l2) != first_is_1) {
        consistent = false;
        break;
      }
      cps[s] = first_is_1 ? order_cost_product(k1, l1, k2, l2)
                          : order_cost_product(k2, l2, k1, l1);
    }
    if (!consistent) continue;

    ++checked;
    const long double floor_value = std::min(cps[0], cps[10]);
    for (int s = 1; s < 10; ++s) {
      if (cps[s] < floor_value - 1e-7L) {
        violations.push_back(ProbeViolation{
            attempt, s / 10.0, static_cast<double>(cps[s]),
            static_cast<double>(floor_value)});
      }
    }
  }
  return violations;
}

void write_csv(const ExperimentSummary& summary, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << "n,count,lcpx_ef_pct,drfw_ef_pct,lcpx_si_pct,drfw_si_pct,"
         "lcpx_lower_makespan_pct,drfw_lower_makespan_pct,equal_makespan_pct,"
         "lcpx_lower_mct_pct,drfw_lower_mct_pct,lcpx_pareto_dominates_pct,"
         "equal_mct_count,skipped\n";
  char line[512];
  for (const SummaryRow& r : summary.rows) {
    std::snprintf(line, sizeof(line),
                  "%d,%d,%.4f,%.4f,%.4f,%.4f,%.4f,%.4f,%.4f,%.4f,%.4f,%.4f,%d,%d\n",
                  r.n, r.count, r.lcpx_ef_pct, r.drfw_ef_pct, r.lcpx_si_pct,
                  r.drfw_si_pct, r.lcpx_lower_makespan_pct,
                  r.drfw_lower_makespan_pct, r.equal_makespan_pct,
                  r.lcpx_lower_mct_pct, r.drfw_lower_mct_pct,
                  r.lcpx_pareto_dominates_pct, r.equal_mct_count, r.skipped);
    out << line;
  }
  if (!out.good()) throw IoError("failed writing " + path);
}

}  // namespace fairshare
