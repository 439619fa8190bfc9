#include "fairshare/mechanisms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <unordered_map>
#include <utility>

#include "fairshare/polytope.hpp"

namespace fairshare {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double tie_slack(double value, const Tolerances& tol) {
  if (!std::isfinite(value)) return 0.0;
  return tol.tie * std::max(1.0, std::abs(value));
}

// Branch-and-bound over piecewise extreme-point schedules. The first
// finisher of each candidate interval fixes the branching, so completion
// orders are explored implicitly.
class LcpSearch {
 public:
  LcpSearch(const Instance& instance, std::uint64_t budget,
            const Tolerances& tol)
      : instance_(instance),
        tol_(tol),
        budget_(budget),
        times_(instance.agent_count(), 0.0) {}

  LcpResult run() {
    std::vector<int> active(instance_.agent_count());
    std::iota(active.begin(), active.end(), 0);
    dfs(active, instance_.work, 0.0, 0.0);

    LcpResult result;
    result.explored = explored_;
    result.budget_exceeded = budget_exceeded_;
    result.log_cost_product = best_;
    for (auto& [value, schedule] : found_) {
      if (std::abs(value - best_) <= tie_slack(best_, tol_)) {
        result.optima.push_back(std::move(schedule));
      }
    }
    return result;
  }

 private:
  struct Child {
    double bound = 0.0;
    double end = 0.0;
    double partial = 0.0;
    std::vector<double> full_shares;
    std::vector<int> survivors;
    std::vector<int> finishers;
    std::vector<double> next_remaining;  // indexed like survivors
  };

  const std::vector<Vertex>& candidates(const std::vector<int>& active) {
    std::uint64_t mask = 0;
    for (int i : active) mask |= (1ULL << i);
    auto it = vertex_cache_.find(mask);
    if (it == vertex_cache_.end()) {
      auto verts =
          pareto_prune(enumerate_vertices(ActiveSet::from(instance_, active), tol_));
      it = vertex_cache_.emplace(mask, std::move(verts)).first;
    }
    return it->second;
  }

  void dfs(const std::vector<int>& active, const std::vector<double>& remaining,
           double now, double partial) {
    if (budget_exceeded_) return;
    if (++explored_ > budget_) {
      budget_exceeded_ = true;
      return;
    }
    if (active.empty()) {
      record(partial);
      return;
    }
    double bound = partial;
    for (std::size_t p = 0; p < active.size(); ++p) {
      bound += std::log(now + remaining[p]);
    }
    if (bound >= best_ - tie_slack(best_, tol_)) return;

    const auto& verts = candidates(active);
    std::vector<Child> children;
    children.reserve(verts.size());
    for (const Vertex& vertex : verts) {
      Child child = advance(active, remaining, now, partial, vertex);
      if (!child.finishers.empty()) children.push_back(std::move(child));
    }
    // Most promising child first pins a good incumbent early.
    std::stable_sort(children.begin(), children.end(),
                     [](const Child& a, const Child& b) { return a.bound < b.bound; });

    for (Child& child : children) {
      if (budget_exceeded_) return;
      if (child.bound >= best_ - tie_slack(best_, tol_)) continue;
      Segment segment;
      segment.start = now;
      segment.end = child.end;
      segment.shares = ShareVector{std::move(child.full_shares)};
      path_.push_back(std::move(segment));
      for (int agent : child.finishers) times_[agent] = child.end;
      dfs(child.survivors, child.next_remaining, child.end, child.partial);
      path_.pop_back();
    }
  }

  Child advance(const std::vector<int>& active,
                const std::vector<double>& remaining, double now,
                double partial, const Vertex& vertex) {
    Child child;
    double duration = kInf;
    for (std::size_t p = 0; p < active.size(); ++p) {
      if (vertex.shares[p] > 0.0) {
        duration = std::min(duration, remaining[p] / vertex.shares[p]);
      }
    }
    if (!std::isfinite(duration) || duration <= 0.0) return child;  // no progress

    child.end = now + duration;
    child.partial = partial;
    child.full_shares.assign(instance_.agent_count(), 0.0);
    for (std::size_t p = 0; p < active.size(); ++p) {
      const int agent = active[p];
      child.full_shares[agent] = vertex.shares[p];
      const double left = remaining[p] - vertex.shares[p] * duration;
      if (vertex.shares[p] > 0.0 &&
          left <= tol_.work * instance_.work[agent]) {
        child.finishers.push_back(agent);
        child.partial += std::log(child.end);
      } else {
        child.survivors.push_back(agent);
        child.next_remaining.push_back(left);
      }
    }
    child.bound = child.partial;
    for (double left : child.next_remaining) {
      child.bound += std::log(child.end + left);
    }
    return child;
  }

  void record(double total) {
    if (total < best_) best_ = total;
    if (total <= best_ + tie_slack(best_, tol_)) {
      Schedule schedule;
      schedule.segments = path_;
      schedule.completion_times = times_;
      found_.emplace_back(total, std::move(schedule));
    }
  }

  const Instance& instance_;
  const Tolerances& tol_;
  std::uint64_t budget_;
  std::uint64_t explored_ = 0;
  bool budget_exceeded_ = false;
  double best_ = kInf;
  std::vector<Segment> path_;
  std::vector<double> times_;
  std::vector<std::pair<double, Schedule>> found_;
  std::unordered_map<std::uint64_t, std::vector<Vertex>> vertex_cache_;
};

}  // namespace

Schedule run_drf_w(const Instance& instance, const Tolerances& tol) {
  const int n = instance.agent_count();
  Schedule schedule;
  schedule.completion_times.assign(n, 0.0);
  std::vector<double> remaining = instance.work;
  std::vector<int> active(n);
  std::iota(active.begin(), active.end(), 0);
  double now = 0.0;

  while (!active.empty()) {
    const double rate = drf_share(ActiveSet::from(instance, active));
    double duration = kInf;
    for (int i : active) duration = std::min(duration, remaining[i] / rate);
    const double end = now + duration;

    std::vector<double> shares(n, 0.0);
    for (int i : active) shares[i] = rate;
    schedule.segments.push_back(Segment{now, end, ShareVector{std::move(shares)}});

    std::vector<int> still_active;
    for (int i : active) {
      const double left = remaining[i] - rate * duration;
      if (left <= tol.work * instance.work[i]) {
        schedule.completion_times[i] = end;
      } else {
        remaining[i] = left;
        still_active.push_back(i);
      }
    }
    active = std::move(still_active);
    now = end;
  }
  return schedule;
}

std::vector<SjfOrder> enumerate_sjf_orders(const Instance& instance,
                                           const Tolerances& tol) {
  const int n = instance.agent_count();
  std::vector<int> sorted(n);
  std::iota(sorted.begin(), sorted.end(), 0);
  std::sort(sorted.begin(), sorted.end(), [&](int a, int b) {
    if (instance.work[a] != instance.work[b]) {
      return instance.work[a] < instance.work[b];
    }
    return a < b;
  });

  // Group agents whose work ties within tol.tie of their neighbor.
  std::vector<std::vector<int>> groups;
  for (int i : sorted) {
    if (!groups.empty() &&
        nearly_equal(instance.work[groups.back().back()], instance.work[i],
                     tol.tie)) {
      groups.back().push_back(i);
    } else {
      groups.push_back({i});
    }
  }

  std::uint64_t total = 1;
  for (const auto& group : groups) {
    for (std::size_t f = 2; f <= group.size(); ++f) total *= f;
    if (total > 720) {
      throw TieGroupTooLarge("tie groups admit more than 720 orders");
    }
  }

  std::vector<std::vector<int>> orders{{}};
  for (const auto& group : groups) {
    std::vector<int> perm = group;
    std::vector<std::vector<int>> extended;
    do {
      for (const auto& prefix : orders) {
        std::vector<int> next = prefix;
        next.insert(next.end(), perm.begin(), perm.end());
        extended.push_back(std::move(next));
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    orders = std::move(extended);
  }

  std::vector<SjfOrder> result;
  result.reserve(orders.size());
  const double probability = 1.0 / static_cast<double>(orders.size());
  for (auto& order : orders) {
    result.push_back(SjfOrder{std::move(order), probability});
  }
  return result;
}

Schedule run_sjf(const Instance& instance, const SjfOrder& order) {
  const int n = instance.agent_count();
  if (static_cast<int>(order.order.size()) != n) {
    throw LengthMismatch("order length does not match agent count");
  }
  Schedule schedule;
  schedule.completion_times.assign(n, 0.0);
  double now = 0.0;
  for (int agent : order.order) {
    const double end = now + instance.work[agent];  // prefix sum, exact
    std::vector<double> shares(n, 0.0);
    shares[agent] = 1.0;
    schedule.segments.push_back(Segment{now, end, ShareVector{std::move(shares)}});
    schedule.completion_times[agent] = end;
    now = end;
  }
  return schedule;
}

LcpResult run_lcp_x(const Instance& instance, std::uint64_t budget,
                    const Tolerances& tol) {
  return LcpSearch(instance, budget, tol).run();
}

TieCosts closed_form_tie_costs(int n, double epsilon) {
  if (n < 3) throw Error("tie instance needs at least 3 agents");
  if (epsilon < 0.0) throw Error("epsilon must be non-negative");
  TieCosts costs;
  costs.tie = 2.0 * std::log(7.0 / 6.0);
  costs.extreme1 = std::log(4.0 / 3.0);
  costs.extreme2 = std::log(5.0 / 4.0);
  for (int i = 3; i <= n; ++i) {
    const double tail_start = 5.0 * (i - 2);
    costs.tie += std::log(tail_start + 7.0 / 6.0);
    costs.extreme1 += std::log(tail_start + 4.0 / 3.0);
    costs.extreme2 += std::log(tail_start + 5.0 / 4.0);
  }
  return costs;
}

}  // namespace fairshare
