#pragma once

#include <vector>

#include "unruhqi/linalg.hpp"
#include "unruhqi/states.hpp"
#include "unruhqi/unruh.hpp"

namespace uqi {

// Set of Bloch vectors the `steered` qubit can be steered to by local
// measurements on its partner: center + axes * diag(semiaxes) * x, |x| <= 1.
struct SteeringEllipsoid {
  Vec3 center{};
  Vec3 semiaxes{};  // non-increasing
  Mat3 axes{};      // orthonormal columns, largest component of each positive
  Mat3 matrix{};    // ellipsoid matrix Q, eigenvalues are semiaxes squared
};

// Throws std::domain_error when the measured partner's marginal is pure.
SteeringEllipsoid steering_ellipsoid(const TwoQubitState& rho, Qubit steered);
SteeringEllipsoid steering_ellipsoid(const PauliDecomposition& d, Qubit steered);

// Points center + axes (s o x) for a Fibonacci lattice x on the unit sphere.
std::vector<Vec3> ellipsoid_surface(const SteeringEllipsoid& e, int samples);

// (F x I) rho (F x I)^dagger / tr(...) or the mirror image on the second
// qubit. F must be invertible.
TwoQubitState local_filter(const TwoQubitState& rho, const ComplexMatrix& filter, Qubit target);

// SLOCC filter ((2 rho_A)^{-1/2} x I) that makes the first marginal I/2. Leaves
// the second qubit's steering ellipsoid unchanged.
TwoQubitState canonical_state(const TwoQubitState& rho);

// Maximal steered coherence from the ellipsoid geometry, X-states only.
//
// With a non-degenerate steered marginal the reference basis is its
// eigenbasis, which for an X-state lies along z, an ellipsoid axis; MSC is the
// longest semiaxis perpendicular to z.
//
// With a degenerate marginal MSC is the infimum over reference bases. This is
// only resolved when the ellipsoid is a body of revolution about z (equal
// transverse semiaxes s): every reference axis u is perpendicular to some
// transverse direction e, so the points center +- s e give a perpendicular
// distance of at least s, and u = z attains s. Other degenerate states are
// rejected; use msc_oracle for them.
double msc_closed_form(const TwoQubitState& rho, Qubit steered);

// Numerical MSC: maximizes the l1 coherence of the steered state over
// projective measurement directions on the partner (grid + golden-section
// refinement). For a rank-1 POVM element M = w (I + m.sigma)/2 the weight w
// cancels between tr_A(M x I rho) and p_M, and a general POVM element is a
// positive combination of such projectors whose steered state is a convex
// mixture, so projective directions attain the maximum. For a degenerate
// steered marginal an outer minimization over reference axes implements the
// infimum convention. Deterministic for fixed arguments.
double msc_oracle(const TwoQubitState& rho, Qubit steered, int grid_density = 64, int refine_iters = 40);

enum class CriticalRadiusMethod { analytic, quadrature };

struct CriticalRadiusResult {
  double value = 0.0;  // +infinity when there are no correlations (p = 0)
  CriticalRadiusMethod method = CriticalRadiusMethod::analytic;
  bool unsteerable = false;  // value >= 1: a local-hidden-state model exists
};

// 1 / (p [cos^2 r + r cot r]) for the accelerated Werner state.
CriticalRadiusResult critical_radius_analytic(double p, UnruhParameter r);

// 2 pi |det T| / N_T^{-1}, N_T^{-1} = int dOmega (n^T T^{-2} n)^{-2}, with
// Gauss-Legendre in cos(theta) (`nodes` points) and the trapezoid rule in phi
// (2 * nodes points). T must be diagonal and non-singular.
CriticalRadiusResult critical_radius_quadrature(const Mat3& T, int nodes);

// Largest p with r_c >= 1 at this acceleration: 1 / [cos^2 r + r cot r].
double steerability_threshold(UnruhParameter r);

// r cot r with its removable singularity at 0.
double r_cot_r(double r);

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// n-point Gauss-Legendre rule on [-1, 1].
QuadratureRule gauss_legendre(int n);

}  // namespace uqi
