#include "fairshare/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace fairshare {

namespace {

constexpr double kNormalizationTol = 1e-12;

std::string agent_label(int i) { return "agent " + std::to_string(i + 1); }

}  // namespace

Instance validate_instance(std::vector<std::vector<double>> demands,
                           std::vector<double> work) {
  if (demands.empty() || work.empty()) {
    throw EmptyInstance("instance needs at least one agent");
  }
  if (demands.size() != work.size()) {
    throw LengthMismatch("demand rows (" + std::to_string(demands.size()) +
                         ") and work entries (" + std::to_string(work.size()) +
                         ") disagree");
  }
  const std::size_t m = demands.front().size();
  if (m == 0) {
    throw EmptyInstance("instance needs at least one resource");
  }
  for (std::size_t i = 0; i < demands.size(); ++i) {
    const auto& row = demands[i];
    if (row.size() != m) {
      throw LengthMismatch(agent_label(static_cast<int>(i)) + " has " +
                           std::to_string(row.size()) + " demands, expected " +
                           std::to_string(m));
    }
    double row_max = 0.0;
    for (double d : row) {
      if (d < 0.0) {
        throw NegativeDemand(agent_label(static_cast<int>(i)) +
                             " has a negative demand");
      }
      row_max = std::max(row_max, d);
    }
    if (std::abs(row_max - 1.0) > kNormalizationTol) {
      throw RowNotNormalized(agent_label(static_cast<int>(i)) +
                             " has dominant demand " + std::to_string(row_max) +
                             ", expected 1");
    }
    if (!(work[i] > 0.0)) {
      throw NonPositiveWork(agent_label(static_cast<int>(i)) +
                            " has non-positive work");
    }
  }
  return Instance{std::move(demands), std::move(work)};
}

ShareVector make_share_vector(std::vector<double> shares,
                              const Tolerances& tol) {
  for (double& s : shares) {
    if (s < 0.0 && s >= -tol.feas) s = 0.0;
  }
  return ShareVector{std::move(shares)};
}

bool shares_feasible(const Instance& instance, const ShareVector& shares,
                     const Tolerances& tol) {
  const int n = instance.agent_count();
  const int m = instance.resource_count();
  if (static_cast<int>(shares.shares.size()) != n) return false;
  for (double s : shares.shares) {
    if (s < -tol.feas) return false;
  }
  for (int r = 0; r < m; ++r) {
    double used = 0.0;
    for (int i = 0; i < n; ++i) {
      used += shares.shares[i] * instance.demands[i][r];
    }
    if (used > 1.0 + tol.feas) return false;
  }
  return true;
}

double progress_rate(std::span<const double> bundle,
                     std::span<const double> demand) {
  double rate = std::numeric_limits<double>::infinity();
  bool any = false;
  for (std::size_t r = 0; r < demand.size(); ++r) {
    if (demand[r] > 0.0) {
      any = true;
      rate = std::min(rate, bundle[r] / demand[r]);
    }
  }
  if (!any) return 0.0;
  return std::max(rate, 0.0);
}

CostVector completion_times(const Instance& instance,
                            const std::vector<Segment>& segments,
                            const Tolerances& tol) {
  const int n = instance.agent_count();
  CostVector times(n, -1.0);
  std::vector<double> remaining = instance.work;
  int unfinished = n;

  for (const Segment& seg : segments) {
    const double dur = seg.duration();
    for (int i = 0; i < n && unfinished > 0; ++i) {
      if (times[i] >= 0.0) continue;
      const double rate = seg.shares.shares[i];
      const double done = rate * dur;
      if (remaining[i] - done <= tol.work * instance.work[i]) {
        // Finishes inside this segment.
        const double need = rate > 0.0 ? remaining[i] / rate : 0.0;
        times[i] = std::min(seg.start + need, seg.end);
        remaining[i] = 0.0;
        --unfinished;
      } else {
        remaining[i] -= done;
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    if (times[i] < 0.0) throw UnfinishedAgent(i);
  }
  return times;
}

double log_cost_product(const CostVector& costs) {
  double sum = 0.0;
  for (double c : costs) {
    if (!(c > 0.0)) {
      throw NonPositiveCost("completion times must be positive");
    }
    sum += std::log(c);
  }
  return sum;
}

std::optional<double> bundle_cost(const Instance& instance,
                                  const Schedule& schedule, int agent_i,
                                  int agent_j, const Tolerances& tol) {
  const int m = instance.resource_count();
  const auto& demand_i = instance.demands[agent_i];
  const auto& demand_j = instance.demands[agent_j];
  const double target = instance.work[agent_i];
  double done = 0.0;
  std::vector<double> bundle(m);

  for (const Segment& seg : schedule.segments) {
    const double lambda_j = seg.shares.shares[agent_j];
    for (int r = 0; r < m; ++r) bundle[r] = lambda_j * demand_j[r];
    const double rate = progress_rate(bundle, demand_i);
    const double gained = rate * seg.duration();
    if (done + gained >= target - tol.work * target) {
      if (rate <= 0.0) return seg.start;
      return std::min(seg.start + (target - done) / rate, seg.end);
    }
    done += gained;
  }
  return std::nullopt;  // the bundle ran out before k_i was reached
}

double equal_split_cost(const Instance& instance, int agent_i) {
  return static_cast<double>(instance.agent_count()) * instance.work[agent_i];
}

void validate_schedule(const Instance& instance, const Schedule& schedule,
                       const Tolerances& tol) {
  const int n = instance.agent_count();
  if (static_cast<int>(schedule.completion_times.size()) != n) {
    throw LengthMismatch("completion time count does not match agent count");
  }
  if (schedule.segments.empty()) {
    throw ValidationError("schedule has no segments");
  }
  double cursor = 0.0;
  for (const Segment& seg : schedule.segments) {
    if (static_cast<int>(seg.shares.shares.size()) != n) {
      throw LengthMismatch("segment share count does not match agent count");
    }
    if (!nearly_equal(seg.start, cursor, tol.work)) {
      throw ValidationError("segments are not contiguous from 0");
    }
    if (!(seg.end > seg.start)) {
      throw ValidationError("segment has non-positive duration");
    }
    if (!shares_feasible(instance, seg.shares, tol)) {
      throw ValidationError("segment shares violate a resource capacity");
    }
    // No agent may hold resources at or after its completion time.
    for (int i = 0; i < n; ++i) {
      if (seg.start >= schedule.completion_times[i] - tol.work &&
          seg.shares.shares[i] > tol.feas) {
        throw ValidationError(agent_label(i) +
                              " holds resources after completing");
      }
    }
    cursor = seg.end;
  }
  const double makespan =
      *std::max_element(schedule.completion_times.begin(),
                        schedule.completion_times.end());
  if (!nearly_equal(cursor, makespan, tol.work)) {
    throw ValidationError("last segment does not end at the makespan");
  }
  const CostVector recomputed = completion_times(instance, schedule.segments, tol);
  for (int i = 0; i < n; ++i) {
    if (!nearly_equal(recomputed[i], schedule.completion_times[i], 1e-9)) {
      throw ValidationError(agent_label(i) +
                            " stored completion time disagrees with segments");
    }
  }
}

}  // namespace fairshare
