#ifndef FAIRSHARE_AUDIT_HPP_
#define FAIRSHARE_AUDIT_HPP_

#include <utility>
#include <vector>

#include "fairshare/core.hpp"

namespace fairshare {

// A schedule together with the probability the mechanism realizes it.
using ScheduleDistribution = std::vector<std::pair<Schedule, double>>;

struct EnvyPair {
  int envious = 0;  // agent i
  int envied = 0;   // agent j
  double own_cost = 0.0;    // E[c_i(A_i)]
  double other_cost = 0.0;  // E[c_i(A_j)]
};

struct SiViolation {
  int agent = 0;
  double cost = 0.0;
  double equal_split = 0.0;  // n * k_i
};

enum class ParetoOrder { A_dominates, B_dominates, Equal, Incomparable };

// Verdicts over the given distribution. With a single schedule the envy and
// sharing-incentive checks are the plain deterministic properties; with
// several they are the in-expectation versions, so ef and ef_in_expectation
// coincide by construction.
struct AuditReport {
  std::vector<EnvyPair> envy_pairs;
  bool ef = true;
  bool ef_in_expectation = true;
  std::vector<SiViolation> si_violations;
  bool si = true;
  double makespan = 0.0;         // of expected completion times
  double mean_completion = 0.0;
};

// Ordered envy pairs under the distribution: (i, j) is envious when
// bundle_cost(i, j) is finite in every realization and the expected cost of
// j's bundle beats i's own expected cost beyond tol.tie. A single
// unfinished realization exonerates the pair.
std::vector<EnvyPair> check_ef(const Instance& instance,
                               const ScheduleDistribution& schedules,
                               const Tolerances& tol = {});

// Agents whose completion time exceeds the equal-split cost n * k_i.
std::vector<SiViolation> check_si(const Instance& instance,
                                  const Schedule& schedule,
                                  const Tolerances& tol = {});

// Componentwise comparison of two cost vectors with tol.tie equality.
ParetoOrder pareto_compare(const CostVector& costs_a, const CostVector& costs_b,
                           const Tolerances& tol = {});

// (makespan, mean completion time).
std::pair<double, double> metrics(const CostVector& costs);

// Full report over a distribution; probabilities must sum to 1 within 1e-12.
AuditReport audit_schedules(const Instance& instance,
                            const ScheduleDistribution& schedules,
                            const Tolerances& tol = {});

}  // namespace fairshare

#endif  // FAIRSHARE_AUDIT_HPP_
