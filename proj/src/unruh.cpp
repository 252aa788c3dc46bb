#include "unruhqi/unruh.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace uqi {

UnruhParameter::UnruhParameter(double r) : r_(r) {
  // A few ulps of slack so values computed as fraction * pi/4 are accepted.
  if (!(r >= 0.0 && r <= kMaxAcceleration * (1.0 + 1e-15))) {
    std::ostringstream msg;
    msg << "acceleration parameter r = " << r << " outside [0, pi/4]";
    throw std::invalid_argument(msg.str());
  }
  r_ = std::min(r, kMaxAcceleration);
}

UnruhParameter r_from_acceleration(double omega, double accel, double c) {
  if (!(omega > 0.0) || !(accel > 0.0) || !(c > 0.0)) {
    throw std::invalid_argument("r_from_acceleration: omega, accel and c must be positive");
  }
  const double boltzmann_like = std::exp(-2.0 * std::numbers::pi * omega * c / accel);
  const double cos_r = 1.0 / std::sqrt(1.0 + boltzmann_like);
  return UnruhParameter(std::acos(std::min(1.0, cos_r)));
}

KrausPair unruh_kraus(UnruhParameter r) {
  const double c = std::cos(r.value());
  const double s = std::sin(r.value());
  return {ComplexMatrix(2, {c, 0.0, 0.0, 1.0}), ComplexMatrix(2, {0.0, 0.0, s, 0.0})};
}

ComplexMatrix apply_channel(const ComplexMatrix& rho, const KrausPair& kraus, Qubit target) {
  auto lift = [&](const ComplexMatrix& k) {
    return target == Qubit::first ? kron(k, pauli::identity()) : kron(pauli::identity(), k);
  };
  const ComplexMatrix k0 = lift(kraus.k0);
  const ComplexMatrix k1 = lift(kraus.k1);
  return k0 * rho * k0.adjoint() + k1 * rho * k1.adjoint();
}

TwoQubitState apply_unruh(const TwoQubitState& rho, Qubit target, UnruhParameter r) {
  if (target != Qubit::first && target != Qubit::second) {
    throw std::invalid_argument("apply_unruh: unknown subsystem");
  }
  return TwoQubitState(apply_channel(rho.matrix(), unruh_kraus(r), target), rho.label());
}

TwoQubitState alice_rob_state(double p, UnruhParameter r) {
  std::ostringstream label;
  label << "alice_rob(p=" << p << ", r=" << r.value() << ")";
  return TwoQubitState(apply_unruh(werner(p), Qubit::second, r).matrix(), label.str());
}

}  // namespace uqi
