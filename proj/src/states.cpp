#include "unruhqi/states.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "unruhqi/tolerances.hpp"

namespace uqi {

TwoQubitState::TwoQubitState(ComplexMatrix matrix, std::string label)
    : matrix_(std::move(matrix)), label_(std::move(label)) {
  if (matrix_.dim() != 4) throw std::invalid_argument("two-qubit state must be 4x4");
  if (!matrix_.is_hermitian(kTol.hermitian)) {
    throw std::invalid_argument("state is not Hermitian");
  }
  const double trace_error = std::abs(matrix_.trace() - 1.0);
  if (trace_error > kTol.trace) {
    std::ostringstream msg;
    msg << "state trace differs from 1 by " << trace_error;
    throw std::invalid_argument(msg.str());
  }
  const double lowest = min_eigenvalue(matrix_);
  if (lowest < kTol.psd) {
    std::ostringstream msg;
    msg << "state is not positive semidefinite (minimum eigenvalue " << lowest << ")";
    throw std::invalid_argument(msg.str());
  }
}

ComplexMatrix TwoQubitState::marginal(Qubit kept) const {
  return reduce(matrix_, kept == Qubit::first ? Qubit::second : Qubit::first);
}

ComplexMatrix bell_phi_plus() {
  ComplexMatrix m(4);
  m(0, 0) = m(0, 3) = m(3, 0) = m(3, 3) = 0.5;
  return m;
}

TwoQubitState werner(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("werner: mixing parameter p must lie in [0, 1]");
  }
  ComplexMatrix m = ComplexMatrix::identity(4) * Complex{(1.0 - p) / 4.0} + bell_phi_plus() * Complex{p};
  std::ostringstream label;
  label << "werner(p=" << p << ")";
  return TwoQubitState(m, label.str());
}

PauliDecomposition pauli_decompose(const TwoQubitState& rho) {
  const ComplexMatrix& m = rho.matrix();
  auto expectation = [&](const ComplexMatrix& op) {
    const Complex value = (m * op).trace();
    if (std::abs(value.imag()) > kTol.imaginary_residue) {
      throw std::runtime_error("pauli_decompose: expectation value has an imaginary residue");
    }
    return value.real();
  };
  PauliDecomposition d;
  for (std::size_t n = 0; n < 3; ++n) {
    d.a[n] = expectation(kron(pauli::sigma(n), pauli::identity()));
    d.b[n] = expectation(kron(pauli::identity(), pauli::sigma(n)));
    for (std::size_t k = 0; k < 3; ++k) d.T(n, k) = expectation(kron(pauli::sigma(n), pauli::sigma(k)));
  }
  return d;
}

TwoQubitState pauli_compose(const PauliDecomposition& d) {
  ComplexMatrix m = ComplexMatrix::identity(4);
  for (std::size_t n = 0; n < 3; ++n) {
    m += kron(pauli::sigma(n), pauli::identity()) * Complex{d.a[n]};
    m += kron(pauli::identity(), pauli::sigma(n)) * Complex{d.b[n]};
    for (std::size_t k = 0; k < 3; ++k) m += kron(pauli::sigma(n), pauli::sigma(k)) * Complex{d.T(n, k)};
  }
  m *= 0.25;
  const double lowest = min_eigenvalue(m);
  if (lowest < kTol.psd) {
    std::ostringstream msg;
    msg << "pauli_compose: reconstruction is not positive semidefinite (minimum eigenvalue " << lowest
        << ")";
    throw std::domain_error(msg.str());
  }
  return TwoQubitState(m, "pauli_compose");
}

bool is_x_state(const TwoQubitState& rho, double tol) {
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t c = 0; c < 4; ++c) {
      if (r == c || r + c == 3) continue;
      if (std::abs(rho(r, c)) > tol) return false;
    }
  }
  return true;
}

}  // namespace uqi
