#ifndef FAIRSHARE_CORE_HPP_
#define FAIRSHARE_CORE_HPP_

#include <optional>
#include <span>
#include <vector>

#include "fairshare/errors.hpp"
#include "fairshare/tolerances.hpp"

namespace fairshare {

// A problem instance: per-agent Leontief demand rows (each normalized so its
// largest entry is exactly 1) and the amount of work each agent must finish.
// The total resource requirement of agent i is work[i] * demands[i]; it is
// derived on the fly and never stored.
struct Instance {
  std::vector<std::vector<double>> demands;  // n rows of m entries in [0, 1]
  std::vector<double> work;                  // n positive entries

  int agent_count() const { return static_cast<int>(work.size()); }
  int resource_count() const {
    return demands.empty() ? 0 : static_cast<int>(demands.front().size());
  }
};

// Checks every invariant and returns the instance, or throws. Rows must
// already be normalized (largest entry 1 within 1e-12); nothing is rescaled
// on the caller's behalf.
Instance validate_instance(std::vector<std::vector<double>> demands,
                           std::vector<double> work);

// Dominant-share rates for one time interval, one entry per agent. The
// bundle implied for agent i on resource r is shares[i] * demands[i][r].
struct ShareVector {
  std::vector<double> shares;
};

// Clamps small negative entries (within -tol.feas) to zero.
ShareVector make_share_vector(std::vector<double> shares,
                              const Tolerances& tol = {});

// True when the shares respect every resource capacity within tol.feas.
bool shares_feasible(const Instance& instance, const ShareVector& shares,
                     const Tolerances& tol = {});

struct Segment {
  double start = 0.0;
  double end = 0.0;
  ShareVector shares;

  double duration() const { return end - start; }
};

// A fixed (piecewise-constant) allocation: contiguous segments starting at 0
// whose boundaries include every agent's completion time.
struct Schedule {
  std::vector<Segment> segments;
  std::vector<double> completion_times;
};

using CostVector = std::vector<double>;

// Rate at which an agent with the given demand row progresses on a bundle:
// min over demanded resources of bundle[r] / demand[r].
double progress_rate(std::span<const double> bundle,
                     std::span<const double> demand);

// Recomputes completion times by forward integration of the segments.
// Throws UnfinishedAgent if some agent's work is not done by the last
// segment's end.
CostVector completion_times(const Instance& instance,
                            const std::vector<Segment>& segments,
                            const Tolerances& tol = {});

// Sum of log completion times. Products of costs are always handled in log
// space.
double log_cost_product(const CostVector& costs);

// Time agent i would need to finish its own work using agent j's bundle as
// scheduled, integrating the min-ratio rate segment by segment. Returns
// nullopt ("unfinished") when the schedule ends first; agent j's bundle is
// zero after t_j, so an unfinished agent can never catch up later.
std::optional<double> bundle_cost(const Instance& instance,
                                  const Schedule& schedule, int agent_i,
                                  int agent_j, const Tolerances& tol = {});

// Cost of agent i under the equal 1/n split of every resource: n * k_i.
double equal_split_cost(const Instance& instance, int agent_i);

// Validates a schedule against an instance: contiguity from 0, feasibility,
// work conservation, zero shares after completion, completion times on
// segment boundaries. Throws ValidationError on the first violation.
void validate_schedule(const Instance& instance, const Schedule& schedule,
                       const Tolerances& tol = {});

}  // namespace fairshare

#endif  // FAIRSHARE_CORE_HPP_
