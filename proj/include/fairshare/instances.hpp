#ifndef FAIRSHARE_INSTANCES_HPP_
#define FAIRSHARE_INSTANCES_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fairshare/core.hpp"

namespace fairshare {

// Parameters of the random instance generator.
struct GenConfig {
  std::uint64_t seed = 0;
  int n = 2;
  int m_min = 1;
  int m_max = 10;
  double k_max = 100.0;
};

// Deterministic draw: the substream is keyed by (seed, n, index), so the
// same triple yields the same instance no matter how the batch is split.
// Resource count is uniform on [m_min, m_max], demands uniform on (0, 1]
// then divided by the row maximum (making the maximum exactly 1), work
// uniform on (0, k_max].
Instance random_instance(const GenConfig& config, std::uint64_t index);

// A canned instance with the outcomes tests check against it.
struct Fixture {
  std::string name;
  Instance instance;
  std::optional<std::vector<double>> lcpx_costs;
  std::optional<std::vector<double>> lcpx_first_shares;
  std::optional<double> lcpx_log_cost_product;
  std::optional<std::vector<double>> drfw_costs;
  std::vector<std::pair<int, int>> lcpx_envy_pairs;  // expected, exact set
  std::optional<bool> drfw_ef;
  std::optional<int> tie_crossover_n;  // first n where tie beats extreme-2
};

// Names: drfw-example, lcp-example, sp-truthful, sp-misreport, envy, tie.
// Throws UnknownFixture otherwise.
Fixture canned(const std::string& name);

// Parameterized builders behind the envy and tie fixtures.
Instance make_envy_instance(double epsilon = 0.01, double k3 = 3.0);
Instance make_tie_instance(int n, double epsilon = 1e-6);

// JSON file round trip; read validates via validate_instance.
Instance read_instance(const std::string& path);
void write_instance(const Instance& instance, const std::string& path);

}  // namespace fairshare

#endif  // FAIRSHARE_INSTANCES_HPP_
