#pragma once

namespace uqi {

// Every numerical threshold used by the library lives here.
struct Tolerances {
  double hermitian = 1e-12;        // max |M - M^dagger| for stored states
  double hermitian_input = 1e-10;  // accepted by hermitian_eig
  double trace = 1e-12;            // |tr(rho) - 1|
  double psd = -1e-10;             // minimum admissible eigenvalue
  double jacobi_off_diagonal = 1e-13;
  int jacobi_max_sweeps = 100;
  double x_state = 1e-10;          // magnitude treated as zero off the X pattern
  double pure_marginal = 1e-8;     // 1 - |bloch| below this means pure
  double degenerate_marginal = 1e-8;
  double imaginary_residue = 1e-12;
  double wootters_clip = -1e-10;   // negative eigenvalues of R above this are clipped to 0
  double numerical_rank = 1.5e-14; // eigenvalues below this times the largest count as zero
  double invertible = 1e-10;       // marginal eigenvalues for canonical filtering
};

inline constexpr Tolerances kTol{};

}  // namespace uqi
