#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "fairshare/experiments.hpp"
#include "fairshare/mechanisms.hpp"

using namespace fairshare;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

TEST_CASE("grid oracle brackets the lcp-x optimum on the worked example") {
  const Instance instance =
      validate_instance({{1.0, 0.5}, {0.25, 1.0}}, {1.0, 1.0});
  const double oracle = grid_oracle_two_agents(instance, 2000);
  const double exact = std::log(7.0 / 4.0);
  CHECK(oracle >= exact - 1e-6);
  CHECK(oracle <= exact + 5e-3);
}

TEST_CASE("grid oracle matches the serial optimum on one resource") {
  const Instance instance = validate_instance({{1.0}, {1.0}}, {1.0, 2.0});
  const double oracle = grid_oracle_two_agents(instance, 1000);
  CHECK(std::abs(oracle - std::log(3.0)) <= 2e-3);
}

TEST_CASE("grid oracle is symmetric under swapping identical agents") {
  const Instance instance =
      validate_instance({{1.0, 0.3}, {1.0, 0.3}}, {2.5, 2.5});
  const Instance swapped =
      validate_instance({{1.0, 0.3}, {1.0, 0.3}}, {2.5, 2.5});
  CHECK(grid_oracle_two_agents(instance, 500) ==
        doctest::Approx(grid_oracle_two_agents(swapped, 500)).epsilon(1e-12));
}

TEST_CASE("grid oracle rejects other agent counts") {
  const Instance three =
      validate_instance({{1.0}, {1.0}, {1.0}}, {1.0, 2.0, 3.0});
  CHECK_THROWS_AS(grid_oracle_two_agents(three, 100), NotTwoAgents);
}

TEST_CASE("quasiconcavity probe finds no violations") {
  CHECK(quasiconcavity_probe(200, 9001).empty());
  CHECK(quasiconcavity_probe(200, 4242).empty());
}

TEST_CASE("cost product is quasiconcave along the worked example's edge") {
  // Segment between the vertices (1, 0) and (6/7, 4/7); agent 1 finishes
  // first at both ends and everywhere between.
  const double k1 = 1.0, k2 = 1.0;
  auto cost_product = [&](double l1, double l2) {
    const double t1 = k1 / l1;
    const double t2 = t1 + (k2 - l2 * t1);
    REQUIRE(k2 - l2 * t1 >= 0.0);
    return t1 * t2;
  };
  const double endpoint_min =
      std::min(cost_product(1.0, 0.0), cost_product(6.0 / 7.0, 4.0 / 7.0));
  for (int s = 0; s <= 10; ++s) {
    const double theta = s / 10.0;
    const double l1 = theta * 1.0 + (1.0 - theta) * 6.0 / 7.0;
    const double l2 = (1.0 - theta) * 4.0 / 7.0;
    CHECK(cost_product(l1, l2) >= endpoint_min - 1e-7);
  }
}

TEST_CASE("write_csv emits one header and one row per n") {
  ExperimentSummary summary;
  SummaryRow row;
  row.n = 2;
  row.count = 10;
  row.lcpx_ef_pct = 100.0;
  row.drfw_ef_pct = 100.0;
  summary.rows.push_back(row);

  const std::string path = "experiments_test_summary.csv";
  write_csv(summary, path);
  const std::string first = slurp(path);
  CHECK(first.starts_with("n,count,lcpx_ef_pct"));
  CHECK(std::count(first.begin(), first.end(), '\n') == 2);

  write_csv(summary, path);
  CHECK(slurp(path) == first);  // byte-identical on rewrite
  std::remove(path.c_str());
}

TEST_CASE("run_table1 aggregates consistently and is worker-independent") {
  Table1Config config;
  config.seed = 20240101ULL;
  config.n_from = 2;
  config.n_to = 3;
  config.count = 40;
  config.workers = 1;

  std::vector<InstanceRecord> records;
  const ExperimentSummary serial = run_table1(config, {}, &records);
  REQUIRE(serial.rows.size() == 2);
  CHECK(records.size() == 80);

  for (const SummaryRow& row : serial.rows) {
    CHECK(row.count == 40);
    CHECK(row.skipped == 0);
    const double makespan_total = row.lcpx_lower_makespan_pct +
                                  row.drfw_lower_makespan_pct +
                                  row.equal_makespan_pct;
    CHECK(makespan_total == doctest::Approx(100.0).epsilon(1e-4));
    const double mct_total = row.lcpx_lower_mct_pct + row.drfw_lower_mct_pct;
    CHECK(mct_total == doctest::Approx(100.0).epsilon(1e-4));
    CHECK(row.lcpx_si_pct == doctest::Approx(100.0));
    CHECK(row.drfw_ef_pct == doctest::Approx(100.0));
  }

  // LCP-X never loses the cost product on any instance in the batch.
  for (const InstanceRecord& r : records) {
    CHECK(r.lcpx_log_cp <= r.drfw_log_cp + 1e-9);
  }

  config.workers = 4;
  const ExperimentSummary parallel = run_table1(config);
  const std::string serial_path = "experiments_test_serial.csv";
  const std::string parallel_path = "experiments_test_parallel.csv";
  write_csv(serial, serial_path);
  write_csv(parallel, parallel_path);
  CHECK(slurp(serial_path) == slurp(parallel_path));
  std::remove(serial_path.c_str());
  std::remove(parallel_path.c_str());
}
