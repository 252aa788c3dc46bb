#include "unruhqi/correlations.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "unruhqi/tolerances.hpp"

namespace uqi {

namespace {

void require_x_state(const TwoQubitState& rho, const char* who) {
  if (!is_x_state(rho, kTol.x_state)) {
    throw std::domain_error(std::string(who) +
                            ": state is not an X-state; the closed form does not apply "
                            "(the general Horodecki correlation-matrix route is not implemented)");
  }
}

// Rounding noise on a zero eigenvalue would otherwise survive the square root
// as ~1e-8.
double clip_eigenvalue(double value, double largest) {
  if (value < kTol.wootters_clip) {
    throw std::runtime_error("concurrence: spin-flipped product has a negative eigenvalue");
  }
  return value <= kTol.numerical_rank * largest ? 0.0 : value;
}

}  // namespace

double concurrence(const TwoQubitState& rho) {
  // The eigenvalues of rho rho~ equal those of the Hermitian matrix
  // sqrt(rho) rho~ sqrt(rho), which the Jacobi solver can handle.
  const ComplexMatrix yy = kron(pauli::y(), pauli::y());
  const ComplexMatrix flipped = yy * rho.matrix().conjugate() * yy;

  const EigenResult spectral = hermitian_eig(rho.matrix());
  ComplexMatrix sqrt_rho(4);
  for (std::size_t k = 0; k < 4; ++k) {
    const double weight = std::sqrt(clip_eigenvalue(spectral.values[k], spectral.values[0]));
    if (weight == 0.0) continue;
    for (std::size_t r = 0; r < 4; ++r) {
      for (std::size_t c = 0; c < 4; ++c) {
        sqrt_rho(r, c) += weight * spectral.vectors(r, k) * std::conj(spectral.vectors(c, k));
      }
    }
  }
  const ComplexMatrix product = sqrt_rho * flipped * sqrt_rho;
  const EigenResult eig = hermitian_eig(0.5 * (product + product.adjoint()));

  const double largest = std::max(0.0, eig.values[0]);
  double value = std::sqrt(largest);
  for (std::size_t k = 1; k < 4; ++k) value -= std::sqrt(clip_eigenvalue(eig.values[k], largest));
  return std::clamp(value, 0.0, 1.0);
}

double concurrence_x_closed_form(const TwoQubitState& rho) {
  require_x_state(rho, "concurrence_x_closed_form");
  auto diag = [&](std::size_t i) { return std::max(0.0, rho(i, i).real()); };
  const double outer = std::abs(rho(0, 3)) - std::sqrt(diag(1) * diag(2));
  const double inner = std::abs(rho(1, 2)) - std::sqrt(diag(0) * diag(3));
  return 2.0 * std::max({0.0, outer, inner});
}

double concurrence_eq17(double p, UnruhParameter r) {
  const double c2 = std::cos(r.value()) * std::cos(r.value());
  return c2 / 4.0 * std::max(0.0, 4.0 * p * p + 2.0 * p - 2.0 + (1.0 - p * p) * c2);
}

double separability_threshold(UnruhParameter r) {
  const double c2 = std::cos(r.value()) * std::cos(r.value());
  return (2.0 - c2) / (4.0 - c2);
}

PptResult ppt_test(const TwoQubitState& rho) {
  const double lowest = min_eigenvalue(partial_transpose(rho.matrix(), Qubit::second));
  return {lowest, lowest < kTol.psd};
}

double chsh_m(const TwoQubitState& rho) {
  require_x_state(rho, "chsh_m");
  const double r14 = std::abs(rho(0, 3));
  const double r23 = std::abs(rho(1, 2));
  const double z = rho(0, 0).real() + rho(3, 3).real() - rho(1, 1).real() - rho(2, 2).real();
  return std::max(8.0 * (r14 * r14 + r23 * r23), z * z + 4.0 * (r23 + r14) * (r23 + r14));
}

double bell_threshold(UnruhParameter r) { return 1.0 / (std::sqrt(2.0) * std::cos(r.value())); }

CorrelationReport correlation_report(const TwoQubitState& rho, double p, UnruhParameter r) {
  CorrelationReport report;
  report.concurrence_wootters = concurrence(rho);
  report.concurrence_eq17 = concurrence_eq17(p, r);
  const PptResult ppt = ppt_test(rho);
  report.ppt_min_eigenvalue = ppt.min_eigenvalue;
  report.entangled_ppt = ppt.entangled;
  report.chsh_m = chsh_m(rho);
  report.b_max = chsh_b_max(report.chsh_m);
  report.bell_nonlocal = report.chsh_m > 1.0;
  return report;
}

}  // namespace uqi
