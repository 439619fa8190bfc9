#include "fairshare/instances.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <utility>

#include "fairshare/rng.hpp"
#include "fairshare/serialization.hpp"

namespace fairshare {

Instance random_instance(const GenConfig& config, std::uint64_t index) {
  if (config.n < 1 || config.m_min < 1 || config.m_min > config.m_max ||
      !(config.k_max > 0.0)) {
    throw ValidationError("generator configuration out of range");
  }
  Xoshiro256pp rng(substream_key(config.seed,
                                 static_cast<std::uint64_t>(config.n), index));
  const int m =
      config.m_min +
      static_cast<int>(rng.uniform_int(
          static_cast<std::uint64_t>(config.m_max - config.m_min + 1)));

  std::vector<std::vector<double>> demands(config.n, std::vector<double>(m));
  for (auto& row : demands) {
    double row_max = 0.0;
    for (double& d : row) {
      d = rng.uniform_open01();
      row_max = std::max(row_max, d);
    }
    for (double& d : row) d /= row_max;  // the maximum becomes exactly 1
  }
  std::vector<double> work(config.n);
  for (double& k : work) k = config.k_max * rng.uniform_open01();
  return validate_instance(std::move(demands), std::move(work));
}

Instance make_envy_instance(double epsilon, double k3) {
  return validate_instance(
      {{1.0, 1.0}, {1.0, epsilon}, {epsilon, 1.0}}, {1.0, 1.0, k3});
}

Instance make_tie_instance(int n, double epsilon) {
  if (n < 3) throw Error("tie instance needs at least 3 agents");
  std::vector<std::vector<double>> demands;
  demands.push_back({1.0, 2.0 / 3.0, epsilon});
  demands.push_back({epsilon, 0.5, 1.0});
  std::vector<double> work{1.0, 1.0};
  for (int i = 2; i < n; ++i) {
    demands.push_back({1.0, 1.0, 1.0});
    work.push_back(5.0);
  }
  return validate_instance(std::move(demands), std::move(work));
}

Fixture canned(const std::string& name) {
  Fixture fixture;
  fixture.name = name;
  if (name == "drfw-example" || name == "lcp-example") {
    fixture.instance =
        validate_instance({{1.0, 0.5}, {0.25, 1.0}}, {1.0, 1.0});
    fixture.drfw_costs = std::vector<double>{1.5, 1.5};
    fixture.drfw_ef = true;
    fixture.lcpx_costs = std::vector<double>{7.0 / 6.0, 1.5};
    fixture.lcpx_first_shares = std::vector<double>{6.0 / 7.0, 4.0 / 7.0};
    fixture.lcpx_log_cost_product = std::log(7.0 / 4.0);
  } else if (name == "sp-truthful") {
    fixture.instance =
        validate_instance({{0.5, 1.0}, {1.0, 1.0 / 6.0}}, {1.0, 1.0});
    fixture.lcpx_costs = std::vector<double>{1.1, 1.5};
    fixture.lcpx_log_cost_product = std::log(1.1 * 1.5);
  } else if (name == "sp-misreport") {
    fixture.instance =
        validate_instance({{2.0 / 3.0, 1.0}, {1.0, 1.0 / 6.0}}, {1.0, 1.0});
    fixture.lcpx_costs = std::vector<double>{16.0 / 15.0, 5.0 / 3.0};
    fixture.lcpx_log_cost_product = std::log((16.0 / 15.0) * (5.0 / 3.0));
  } else if (name == "envy") {
    const double eps = 0.01;
    const double k3 = 3.0;
    fixture.instance = make_envy_instance(eps, k3);
    fixture.lcpx_costs = std::vector<double>{1.0, 2.0 + eps, 1.0 + eps + k3};
    fixture.lcpx_log_cost_product = std::log((2.0 + eps) * (1.0 + eps + k3));
    fixture.lcpx_envy_pairs = {{1, 0}};  // agent 2 envies agent 1 (0-based)
    fixture.drfw_ef = true;
  } else if (name == "tie") {
    fixture.instance = make_tie_instance(3);
    fixture.tie_crossover_n = 132;
  } else {
    throw UnknownFixture("no fixture named \"" + name + "\"");
  }
  return fixture;
}

Instance read_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return instance_from_json(parse_json(buffer.str(), path));
}

void write_instance(const Instance& instance, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << instance_to_json(instance).dump(2) << '\n';
  if (!out.good()) throw IoError("failed writing " + path);
}

}  // namespace fairshare
