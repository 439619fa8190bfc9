#include "fairshare/polytope.hpp"

#include <algorithm>
#include <cmath>

namespace fairshare {

namespace {

constexpr double kPivotTol = 1e-12;

// Next k-subset of {0..n-1} in lexicographic order; false when exhausted.
bool next_combination(std::vector<int>& idx, int n) {
  const int k = static_cast<int>(idx.size());
  for (int i = k - 1; i >= 0; --i) {
    if (idx[i] < n - (k - i)) {
      ++idx[i];
      for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

bool same_point(const std::vector<double>& a, const std::vector<double>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i] - b[i]) > 1e-9) return false;
  }
  return true;
}

}  // namespace

ActiveSet ActiveSet::from(const Instance& instance, std::vector<int> agents) {
  ActiveSet active;
  active.demands.reserve(agents.size());
  for (int i : agents) active.demands.push_back(instance.demands[i]);
  active.agents = std::move(agents);
  return active;
}

double drf_share(const ActiveSet& active) {
  double worst = 0.0;
  for (int r = 0; r < active.resource_count(); ++r) {
    double column = 0.0;
    for (const auto& row : active.demands) column += row[r];
    worst = std::max(worst, column);
  }
  return 1.0 / worst;  // worst >= 1 because every row has a 1
}

std::optional<std::vector<double>> solve_square_system(
    std::vector<std::vector<double>> rows, std::vector<double> rhs) {
  const int k = static_cast<int>(rhs.size());
  for (int col = 0; col < k; ++col) {
    int pivot = col;
    for (int r = col + 1; r < k; ++r) {
      if (std::abs(rows[r][col]) > std::abs(rows[pivot][col])) pivot = r;
    }
    if (std::abs(rows[pivot][col]) < kPivotTol) return std::nullopt;
    std::swap(rows[col], rows[pivot]);
    std::swap(rhs[col], rhs[pivot]);
    for (int r = col + 1; r < k; ++r) {
      const double factor = rows[r][col] / rows[col][col];
      if (factor == 0.0) continue;
      for (int c = col; c < k; ++c) rows[r][c] -= factor * rows[col][c];
      rhs[r] -= factor * rhs[col];
    }
  }
  std::vector<double> solution(k);
  for (int r = k - 1; r >= 0; --r) {
    double value = rhs[r];
    for (int c = r + 1; c < k; ++c) value -= rows[r][c] * solution[c];
    solution[r] = value / rows[r][r];
  }
  return solution;
}

std::vector<Vertex> enumerate_vertices(const ActiveSet& active,
                                       const Tolerances& tol) {
  const int s = active.size();
  const int m = active.resource_count();

  // Resources no active agent demands can never be saturated.
  std::vector<int> usable;
  for (int r = 0; r < m; ++r) {
    for (const auto& row : active.demands) {
      if (row[r] > 0.0) {
        usable.push_back(r);
        break;
      }
    }
  }

  std::vector<Vertex> found;
  std::vector<bool> zeroed(s, false);

  // Choose z agents pinned to zero, then s - z saturated resources.
  for (int z = 0; z < s; ++z) {
    const int need = s - z;
    if (need > static_cast<int>(usable.size())) continue;

    std::vector<int> zero_pick(z);
    for (int i = 0; i < z; ++i) zero_pick[i] = i;
    bool more_zero = true;
    while (more_zero) {
      std::fill(zeroed.begin(), zeroed.end(), false);
      for (int p : zero_pick) zeroed[p] = true;
      std::vector<int> free_agents;
      for (int p = 0; p < s; ++p) {
        if (!zeroed[p]) free_agents.push_back(p);
      }

      std::vector<int> res_pick(need);
      for (int i = 0; i < need; ++i) res_pick[i] = i;
      bool more_res = true;
      while (more_res) {
        // Saturation equations: sum_i d_ir * lambda_i = 1 for chosen r.
        std::vector<std::vector<double>> rows;
        rows.reserve(need);
        for (int ri = 0; ri < need; ++ri) {
          const int r = usable[res_pick[ri]];
          std::vector<double> row(need);
          for (int ci = 0; ci < need; ++ci) {
            row[ci] = active.demands[free_agents[ci]][r];
          }
          rows.push_back(std::move(row));
        }
        auto solution = solve_square_system(std::move(rows),
                                            std::vector<double>(need, 1.0));
        if (solution) {
          bool ok = true;
          std::vector<double> shares(s, 0.0);
          for (int ci = 0; ci < need; ++ci) {
            double v = (*solution)[ci];
            if (v < -tol.feas) {
              ok = false;
              break;
            }
            shares[free_agents[ci]] = std::max(v, 0.0);
          }
          if (ok) {
            for (int r = 0; r < m && ok; ++r) {
              double used = 0.0;
              for (int p = 0; p < s; ++p) {
                used += shares[p] * active.demands[p][r];
              }
              if (used > 1.0 + tol.feas) ok = false;
            }
          }
          if (ok) {
            const bool origin = std::all_of(shares.begin(), shares.end(),
                                            [](double v) { return v == 0.0; });
            const bool dup =
                std::any_of(found.begin(), found.end(), [&](const Vertex& v) {
                  return same_point(v.shares, shares);
                });
            if (!origin && !dup) {
              Vertex vertex;
              vertex.shares = std::move(shares);
              vertex.zero_agents = zero_pick;
              for (int ri = 0; ri < need; ++ri) {
                vertex.saturated_resources.push_back(usable[res_pick[ri]]);
              }
              found.push_back(std::move(vertex));
            }
          }
        }
        more_res = next_combination(res_pick, static_cast<int>(usable.size()));
      }
      more_zero = z > 0 && next_combination(zero_pick, s);
    }
  }
  return found;
}

std::vector<Vertex> pareto_prune(std::vector<Vertex> vertices) {
  const std::size_t count = vertices.size();
  std::vector<bool> dominated(count, false);
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = 0; j < count && !dominated[i]; ++j) {
      if (i == j) continue;
      bool ge_all = true;
      bool gt_some = false;
      for (std::size_t c = 0; c < vertices[i].shares.size(); ++c) {
        const double a = vertices[j].shares[c];
        const double b = vertices[i].shares[c];
        if (a < b) {
          ge_all = false;
          break;
        }
        if (a > b) gt_some = true;
      }
      dominated[i] = ge_all && gt_some;
    }
  }
  std::vector<Vertex> kept;
  for (std::size_t i = 0; i < count; ++i) {
    if (!dominated[i]) kept.push_back(std::move(vertices[i]));
  }
  return kept;
}

}  // namespace fairshare
