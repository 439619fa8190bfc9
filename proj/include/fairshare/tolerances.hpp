#ifndef FAIRSHARE_TOLERANCES_HPP_
#define FAIRSHARE_TOLERANCES_HPP_

#include <algorithm>
#include <cmath>

namespace fairshare {

// Numeric tolerances used throughout the library. All comparisons between
// computed quantities go through these; exact structural checks (agent
// counts, row normalization at input) do not.
struct Tolerances {
  double feas = 1e-9;  // slack allowed on resource capacity constraints
  double work = 1e-9;  // relative threshold for "work completed"
  double tie = 1e-9;   // relative tolerance for cost comparisons
};

// Relative equality with a floor of 1, so values near zero compare sanely.
inline bool nearly_equal(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

inline bool definitely_less(double a, double b, double tol) {
  return a < b && !nearly_equal(a, b, tol);
}

}  // namespace fairshare

#endif  // FAIRSHARE_TOLERANCES_HPP_
