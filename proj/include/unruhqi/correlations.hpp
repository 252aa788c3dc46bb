#pragma once

#include <cmath>

#include "unruhqi/states.hpp"
#include "unruhqi/unruh.hpp"

namespace uqi {

// Wootters concurrence max{0, l1 - l2 - l3 - l4}, where l_i are the square
// roots of the eigenvalues of rho (Y x Y) rho* (Y x Y), descending.
double concurrence(const TwoQubitState& rho);

// 2 max{0, |rho14| - sqrt(rho22 rho33), |rho23| - sqrt(rho11 rho44)}; X-states only.
double concurrence_x_closed_form(const TwoQubitState& rho);

// Published closed form (cos^2 r / 4) max{0, 4p^2 + 2p - 2 + (1 - p^2) cos^2 r}
// for the accelerated Werner state. Its zero set matches the Wootters value
// but its magnitude does not (e.g. 0.5 vs cos(pi/4) at p = 1, r = pi/4); it is
// reported for comparison only.
double concurrence_eq17(double p, UnruhParameter r);

// Largest p for which the accelerated Werner state is separable.
double separability_threshold(UnruhParameter r);

struct PptResult {
  double min_eigenvalue;
  bool entangled;
};

// Partial transpose over the second qubit.
PptResult ppt_test(const TwoQubitState& rho);

// Horodecki M(rho) for X-states; CHSH is violated iff M > 1.
double chsh_m(const TwoQubitState& rho);

inline double chsh_b_max(double m) { return 2.0 * std::sqrt(m); }

// 1 / (sqrt(2) cos r); values above 1 mean no Werner state violates CHSH.
double bell_threshold(UnruhParameter r);

struct CorrelationReport {
  double concurrence_wootters = 0.0;
  double concurrence_eq17 = 0.0;
  double ppt_min_eigenvalue = 0.0;
  bool entangled_ppt = false;
  double chsh_m = 0.0;
  double b_max = 0.0;
  bool bell_nonlocal = false;
};

// concurrence_eq17 is only meaningful for alice_rob_state(p, r).
CorrelationReport correlation_report(const TwoQubitState& rho, double p, UnruhParameter r);

}  // namespace uqi
