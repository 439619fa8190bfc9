#ifndef FAIRSHARE_EXPERIMENTS_HPP_
#define FAIRSHARE_EXPERIMENTS_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "fairshare/core.hpp"
#include "fairshare/instances.hpp"

namespace fairshare {

struct Table1Config {
  std::uint64_t seed = 42;
  int n_from = 2;
  int n_to = 5;
  int count = 500;
  int m_min = 1;
  int m_max = 10;
  double k_max = 100.0;
  int workers = 1;
  std::uint64_t lcp_budget = 10'000'000;
};

// Everything measured on one instance; kept for the optional JSON dump and
// for property tests that want the raw comparisons.
struct InstanceRecord {
  int n = 0;
  std::uint64_t index = 0;
  bool skipped = false;  // LCP-X budget ran out
  double lcpx_log_cp = 0.0;
  double drfw_log_cp = 0.0;
  double lcpx_makespan = 0.0;
  double drfw_makespan = 0.0;
  double lcpx_mct = 0.0;
  double drfw_mct = 0.0;
  bool lcpx_ef = false;
  bool drfw_ef = false;
  bool lcpx_si = false;
  bool drfw_si = false;
  bool lcpx_dominates = false;
  int makespan_bucket = 0;  // 0 lcpx lower, 1 drfw lower, 2 equal
  int mct_bucket = 0;       // 0 lcpx lower, 1 drfw lower, 2 equal
};

struct SummaryRow {
  int n = 0;
  int count = 0;
  double lcpx_ef_pct = 0.0;
  double drfw_ef_pct = 0.0;
  double lcpx_si_pct = 0.0;
  double drfw_si_pct = 0.0;
  double lcpx_lower_makespan_pct = 0.0;
  double drfw_lower_makespan_pct = 0.0;
  double equal_makespan_pct = 0.0;
  double lcpx_lower_mct_pct = 0.0;
  double drfw_lower_mct_pct = 0.0;
  double lcpx_pareto_dominates_pct = 0.0;
  int equal_mct_count = 0;  // diagnostics; folded half-half into the two rows
  int skipped = 0;
};

struct ExperimentSummary {
  std::vector<SummaryRow> rows;
};

// Runs DRF-W and LCP-X over `count` random instances for every n in
// [n_from, n_to] and aggregates the comparison percentages. Deterministic
// in (seed, n, index); the worker count changes nothing but wall time.
ExperimentSummary run_table1(const Table1Config& config,
                             const Tolerances& tol = {},
                             std::vector<InstanceRecord>* records = nullptr);

// Independent check for two agents: sweep the first-interval share of agent
// 1 over a grid, give agent 2 the rest, finish the survivor alone, and take
// the best log cost product over both finishing orders.
double grid_oracle_two_agents(const Instance& instance, int grid);

struct ProbeViolation {
  std::uint64_t trial = 0;
  double theta = 0.0;
  double cp_mid = 0.0;
  double cp_endpoint_min = 0.0;
};

// Samples `trials` order-consistent share segments on random two-agent
// instances and checks the cost product at interior points never drops
// below the endpoint minimum (within 1e-7). Expected empty.
std::vector<ProbeViolation> quasiconcavity_probe(int trials,
                                                 std::uint64_t seed);

// One header row, one row per n, percentages with 4 decimals.
void write_csv(const ExperimentSummary& summary, const std::string& path);

}  // namespace fairshare

#endif  // FAIRSHARE_EXPERIMENTS_HPP_
