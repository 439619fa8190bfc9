#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "fairshare/instances.hpp"
#include "fairshare/mechanisms.hpp"
#include "fairshare/rng.hpp"
#include "fairshare/serialization.hpp"

using namespace fairshare;

namespace {

std::string temp_path(const char* name) {
  return std::string("instances_test_") + name + ".json";
}

}  // namespace

TEST_CASE("random_instance is deterministic in (seed, n, index)") {
  const GenConfig config{123456789ULL, 3, 1, 10, 100.0};
  const Instance a = random_instance(config, 7);
  const Instance b = random_instance(config, 7);
  CHECK(instance_to_json(a).dump() == instance_to_json(b).dump());

  // Drawing other indices in between changes nothing.
  random_instance(config, 0);
  random_instance(config, 12345);
  const Instance c = random_instance(config, 7);
  CHECK(instance_to_json(a).dump() == instance_to_json(c).dump());

  const Instance other_index = random_instance(config, 8);
  CHECK(instance_to_json(a).dump() != instance_to_json(other_index).dump());
}

TEST_CASE("random_instance honors the resource bounds") {
  const GenConfig config{5ULL, 2, 1, 1, 100.0};
  for (int i = 0; i < 50; ++i) {
    CHECK(random_instance(config, i).resource_count() == 1);
  }
}

TEST_CASE("random_instance rejects bad configurations") {
  CHECK_THROWS_AS(random_instance(GenConfig{1ULL, 0, 1, 10, 100.0}, 0),
                  ValidationError);
  CHECK_THROWS_AS(random_instance(GenConfig{1ULL, 2, 5, 3, 100.0}, 0),
                  ValidationError);
  CHECK_THROWS_AS(random_instance(GenConfig{1ULL, 2, 1, 10, 0.0}, 0),
                  ValidationError);
}

TEST_CASE("generated rows are normalized and work is in range") {
  const GenConfig config{987ULL, 3, 1, 10, 100.0};
  for (int i = 0; i < 10000; ++i) {
    const Instance instance = random_instance(config, i);
    for (const auto& row : instance.demands) {
      double row_max = 0.0;
      for (double d : row) {
        CHECK(d > 0.0);
        CHECK(d <= 1.0);
        row_max = std::max(row_max, d);
      }
      CHECK(row_max == 1.0);  // exactly, by construction
    }
    for (double k : instance.work) {
      CHECK(k > 0.0);
      CHECK(k <= 100.0);
    }
  }
}

TEST_CASE("generator distributions have the right means") {
  // The demand entries before normalization and the work draws share the
  // same uniform-(0,1] primitive; check it directly at scale.
  Xoshiro256pp rng(31415);
  double sum = 0.0;
  const int samples = 100000;
  for (int i = 0; i < samples; ++i) sum += rng.uniform_open01();
  CHECK(std::abs(sum / samples - 0.5) < 0.01);

  const GenConfig config{2718ULL, 2, 4, 4, 100.0};
  double k_sum = 0.0;
  int k_count = 0;
  for (int i = 0; i < 50000; ++i) {
    const Instance instance = random_instance(config, i);
    for (double k : instance.work) {
      k_sum += k;
      ++k_count;
    }
  }
  CHECK(std::abs(k_sum / k_count - 50.0) < 1.0);
}

TEST_CASE("continuous work draws never tie") {
  const GenConfig config{20240601ULL, 5, 1, 10, 100.0};
  for (int i = 0; i < 1000; ++i) {
    const Instance instance = random_instance(config, i);
    // Exactly one admissible sjf order means every tie group has size 1.
    CHECK(enumerate_sjf_orders(instance).size() == 1);
  }
}

TEST_CASE("canned fixtures carry their expected facts") {
  const Fixture lcp = canned("lcp-example");
  REQUIRE(lcp.lcpx_costs.has_value());
  CHECK((*lcp.lcpx_costs)[0] == doctest::Approx(7.0 / 6.0));
  CHECK((*lcp.lcpx_costs)[1] == doctest::Approx(1.5));

  const Fixture truthful = canned("sp-truthful");
  REQUIRE(truthful.lcpx_costs.has_value());
  CHECK((*truthful.lcpx_costs)[0] == doctest::Approx(1.1));
  CHECK((*truthful.lcpx_costs)[1] == doctest::Approx(1.5));

  const Fixture misreport = canned("sp-misreport");
  REQUIRE(misreport.lcpx_costs.has_value());
  CHECK((*misreport.lcpx_costs)[0] == doctest::Approx(16.0 / 15.0));
  CHECK((*misreport.lcpx_costs)[1] == doctest::Approx(5.0 / 3.0));

  const Fixture envy = canned("envy");
  CHECK(envy.instance.agent_count() == 3);
  CHECK(envy.lcpx_envy_pairs.size() == 1);

  const Fixture tie = canned("tie");
  CHECK(tie.tie_crossover_n == 132);

  CHECK_THROWS_AS(canned("nope"), UnknownFixture);
}

TEST_CASE("instance files round trip exactly") {
  const std::string path = temp_path("roundtrip");
  const Instance original =
      random_instance(GenConfig{99ULL, 4, 1, 10, 100.0}, 3);
  write_instance(original, path);
  const Instance loaded = read_instance(path);
  CHECK(loaded.demands == original.demands);
  CHECK(loaded.work == original.work);
  std::remove(path.c_str());
}

TEST_CASE("read_instance reports parse and validation errors") {
  const std::string path = temp_path("bad");
  {
    std::ofstream out(path);
    out << "{ not json";
  }
  CHECK_THROWS_AS(read_instance(path), ParseError);
  {
    std::ofstream out(path);
    out << R"({"demands": [[0.9, 0.5]], "work": [1.0]})";
  }
  CHECK_THROWS_AS(read_instance(path), RowNotNormalized);
  {
    std::ofstream out(path);
    out << R"({"demands": [[1.0, 0.5]]})";
  }
  CHECK_THROWS_AS(read_instance(path), ParseError);
  std::remove(path.c_str());
  CHECK_THROWS_AS(read_instance(path), IoError);
}

TEST_CASE("schedule json validates against the instance") {
  const Instance instance =
      validate_instance({{1.0, 0.5}, {0.25, 1.0}}, {1.0, 1.0});
  const LcpResult lcp = run_lcp_x(instance);
  REQUIRE_FALSE(lcp.optima.empty());
  const auto j = schedule_to_json(lcp.optima.front());
  const Schedule loaded = schedule_from_json(instance, j);
  CHECK(loaded.completion_times[0] ==
        doctest::Approx(lcp.optima.front().completion_times[0]));

  // A schedule for a different agent count is rejected.
  const Instance other = validate_instance({{1.0}}, {1.0});
  CHECK_THROWS_AS(schedule_from_json(other, j), ValidationError);
}
