#ifndef FAIRSHARE_POLYTOPE_HPP_
#define FAIRSHARE_POLYTOPE_HPP_

#include <optional>
#include <vector>

#include "fairshare/core.hpp"

namespace fairshare {

// The agents still running at some point in time, with their demand rows.
struct ActiveSet {
  std::vector<int> agents;                   // ascending instance indices
  std::vector<std::vector<double>> demands;  // one row per active agent

  static ActiveSet from(const Instance& instance, std::vector<int> agents);

  int size() const { return static_cast<int>(agents.size()); }
  int resource_count() const {
    return demands.empty() ? 0 : static_cast<int>(demands.front().size());
  }
};

// An extreme point of the instantaneous-allocation polytope over an active
// set. shares is indexed by position within the active set; the tight
// constraints that define the point are kept for diagnostics.
struct Vertex {
  std::vector<double> shares;
  std::vector<int> zero_agents;         // positions forced to zero
  std::vector<int> saturated_resources; // resource indices solved to capacity
};

// The common dominant share every active agent receives under DRF:
// 1 / max_r (column sum of demands over the active set).
double drf_share(const ActiveSet& active);

// Gaussian elimination with partial pivoting on a k-by-k system.
// Returns nullopt when a pivot falls below 1e-12 in magnitude.
std::optional<std::vector<double>> solve_square_system(
    std::vector<std::vector<double>> rows, std::vector<double> rhs);

// All extreme points of the feasible-share polytope for the active set,
// found by making exactly |active| constraints tight: a subset of agents
// pinned to zero plus enough saturated resources to square the system.
// Infeasible and duplicate solutions are dropped, as is the origin.
std::vector<Vertex> enumerate_vertices(const ActiveSet& active,
                                       const Tolerances& tol = {});

// Removes vertices componentwise dominated by another vertex in the list.
std::vector<Vertex> pareto_prune(std::vector<Vertex> vertices);

}  // namespace fairshare

#endif  // FAIRSHARE_POLYTOPE_HPP_
