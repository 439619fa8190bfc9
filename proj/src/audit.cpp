#include "fairshare/audit.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace fairshare {

namespace {

void require_distribution(const Instance& instance,
                          const ScheduleDistribution& schedules) {
  if (schedules.empty()) {
    throw ValidationError("empty schedule distribution");
  }
  double total = 0.0;
  for (const auto& [schedule, probability] : schedules) {
    if (static_cast<int>(schedule.completion_times.size()) !=
        instance.agent_count()) {
      throw LengthMismatch("schedule agent count does not match instance");
    }
    total += probability;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw ValidationError("probabilities do not sum to 1");
  }
}

CostVector expected_costs(const ScheduleDistribution& schedules) {
  CostVector costs(schedules.front().first.completion_times.size(), 0.0);
  for (const auto& [schedule, probability] : schedules) {
    for (std::size_t i = 0; i < costs.size(); ++i) {
      costs[i] += probability * schedule.completion_times[i];
    }
  }
  return costs;
}

}  // namespace

std::vector<EnvyPair> check_ef(const Instance& instance,
                               const ScheduleDistribution& schedules,
                               const Tolerances& tol) {
  require_distribution(instance, schedules);
  const int n = instance.agent_count();
  std::vector<EnvyPair> envious;

  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      double own = 0.0;
      double other = 0.0;
      bool finished_everywhere = true;
      for (const auto& [schedule, probability] : schedules) {
        const auto swapped = bundle_cost(instance, schedule, i, j, tol);
        if (!swapped) {
          finished_everywhere = false;
          break;
        }
        own += probability * schedule.completion_times[i];
        other += probability * *swapped;
      }
      if (finished_everywhere && other < own - tol.tie * own) {
        envious.push_back(EnvyPair{i, j, own, other});
      }
    }
  }
  return envious;
}

std::vector<SiViolation> check_si(const Instance& instance,
                                  const Schedule& schedule,
                                  const Tolerances& tol) {
  std::vector<SiViolation> violations;
  for (int i = 0; i < instance.agent_count(); ++i) {
    const double bound = equal_split_cost(instance, i);
    const double cost = schedule.completion_times[i];
    if (cost > bound * (1.0 + tol.tie)) {
      violations.push_back(SiViolation{i, cost, bound});
    }
  }
  return violations;
}

ParetoOrder pareto_compare(const CostVector& costs_a, const CostVector& costs_b,
                           const Tolerances& tol) {
  if (costs_a.size() != costs_b.size()) {
    throw LengthMismatch("cost vectors differ in length");
  }
  bool a_better = false;
  bool b_better = false;
  for (std::size_t i = 0; i < costs_a.size(); ++i) {
    if (nearly_equal(costs_a[i], costs_b[i], tol.tie)) continue;
    if (costs_a[i] < costs_b[i]) {
      a_better = true;
    } else {
      b_better = true;
    }
  }
  if (a_better && b_better) return ParetoOrder::Incomparable;
  if (a_better) return ParetoOrder::A_dominates;
  if (b_better) return ParetoOrder::B_dominates;
  return ParetoOrder::Equal;
}

std::pair<double, double> metrics(const CostVector& costs) {
  if (costs.empty()) throw ValidationError("empty cost vector");
  const double makespan = *std::max_element(costs.begin(), costs.end());
  const double mean =
      std::accumulate(costs.begin(), costs.end(), 0.0) /
      static_cast<double>(costs.size());
  return {makespan, mean};
}

AuditReport audit_schedules(const Instance& instance,
                            const ScheduleDistribution& schedules,
                            const Tolerances& tol) {
  require_distribution(instance, schedules);
  AuditReport report;
  report.envy_pairs = check_ef(instance, schedules, tol);
  report.ef = report.envy_pairs.empty();
  report.ef_in_expectation = report.ef;

  for (const auto& [schedule, probability] : schedules) {
    for (const SiViolation& v : check_si(instance, schedule, tol)) {
      const bool seen =
          std::any_of(report.si_violations.begin(), report.si_violations.end(),
                      [&](const SiViolation& w) { return w.agent == v.agent; });
      if (!seen) report.si_violations.push_back(v);
    }
  }
  report.si = report.si_violations.empty();

  const auto [makespan, mean] = metrics(expected_costs(schedules));
  report.makespan = makespan;
  report.mean_completion = mean;
  return report;
}

}  // namespace fairshare
