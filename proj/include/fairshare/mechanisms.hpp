#ifndef FAIRSHARE_MECHANISMS_HPP_
#define FAIRSHARE_MECHANISMS_HPP_

#include <cstdint>
#include <vector>

#include "fairshare/core.hpp"

namespace fairshare {

// One admissible serial order for shortest-job-first, with the probability
// of drawing it under uniform tie breaking.
struct SjfOrder {
  std::vector<int> order;  // agent indices, earliest first
  double probability = 1.0;
};

// Outcome of the least-cost-product search restricted to extreme points.
struct LcpResult {
  std::vector<Schedule> optima;    // all discovered schedules tied at the min
  double log_cost_product = 0.0;
  std::uint64_t explored = 0;      // search states visited
  bool budget_exceeded = false;    // true when the node budget cut the search
};

// Closed-form log cost products of the three allocations in the crafted
// tie instance: makespan-minimizing tie, and the two extreme-point
// alternatives, each followed by a serial tail of jobs of length 5.
struct TieCosts {
  double tie = 0.0;
  double extreme1 = 0.0;
  double extreme2 = 0.0;
};

// Dominant resource fairness rerun after every completion: all active
// agents share the common DRF rate until the next one finishes. At most n
// segments.
Schedule run_drf_w(const Instance& instance, const Tolerances& tol = {});

// All serial orders that sort work non-decreasingly, uniform over
// permutations of equal-work groups (equality within tol.tie, relative).
// Throws TieGroupTooLarge when the tie groups admit more than 720 orders.
std::vector<SjfOrder> enumerate_sjf_orders(const Instance& instance,
                                           const Tolerances& tol = {});

// Serial schedule for one order: each agent runs alone at rate 1, so
// completion times are exact prefix sums of work.
Schedule run_sjf(const Instance& instance, const SjfOrder& order);

// Depth-first branch-and-bound over schedules whose every interval is a
// Pareto-undominated extreme point of the active set's share polytope.
// Returns every discovered schedule whose log cost product ties the minimum
// within tol.tie. When the node budget runs out the incumbent is returned
// with budget_exceeded set.
LcpResult run_lcp_x(const Instance& instance,
                    std::uint64_t budget = 10'000'000,
                    const Tolerances& tol = {});

// Evaluates the three tie-instance formulas at the epsilon -> 0 limit for n
// agents (n >= 3). epsilon must be >= 0 and only parameterizes the caller's
// instance, not these limits.
TieCosts closed_form_tie_costs(int n, double epsilon = 0.0);

}  // namespace fairshare

#endif  // FAIRSHARE_MECHANISMS_HPP_
