#pragma once

#include <string>

#include "unruhqi/linalg.hpp"

namespace uqi {

// Validated two-qubit density matrix: unit trace, Hermitian and positive
// semidefinite within kTol. Basis ordering is |q1 q2>.
class TwoQubitState {
 public:
  explicit TwoQubitState(ComplexMatrix matrix, std::string label = {});

  const ComplexMatrix& matrix() const { return matrix_; }
  const std::string& label() const { return label_; }
  Complex operator()(std::size_t row, std::size_t col) const { return matrix_(row, col); }

  ComplexMatrix marginal(Qubit kept) const;

 private:
  ComplexMatrix matrix_;
  std::string label_;
};

// rho = (a.sigma x I + I x b.sigma + sum T_nm sigma_n x sigma_m + I x I) / 4
struct PauliDecomposition {
  Vec3 a{};
  Vec3 b{};
  Mat3 T{};
};

// |Phi+> = (|00> + |11>)/sqrt(2) projector.
ComplexMatrix bell_phi_plus();

// (1-p)/4 I + p |Phi+><Phi+|, 0 <= p <= 1.
TwoQubitState werner(double p);

PauliDecomposition pauli_decompose(const TwoQubitState& rho);

// Throws std::domain_error if the reconstruction is not a density matrix.
TwoQubitState pauli_compose(const PauliDecomposition& d);

// True iff every entry off the diagonal and anti-diagonal is at most tol.
bool is_x_state(const TwoQubitState& rho, double tol);

}  // namespace uqi
