#pragma once

#include <numbers>

#include "unruhqi/linalg.hpp"
#include "unruhqi/states.hpp"

namespace uqi {

inline constexpr double kMaxAcceleration = std::numbers::pi / 4.0;

// Acceleration parameter of the fermionic Unruh channel, r in [0, pi/4].
// r = 0 is inertial, r = pi/4 the infinite-acceleration limit.
class UnruhParameter {
 public:
  explicit UnruhParameter(double r);
  double value() const { return r_; }

 private:
  double r_;
};

// cos r = (1 + exp(-2 pi omega c / accel))^{-1/2}. omega in 1/s, accel in
// m/s^2, c in m/s.
UnruhParameter r_from_acceleration(double omega, double accel, double c = 299792458.0);

struct KrausPair {
  ComplexMatrix k0;
  ComplexMatrix k1;
};

// Single-mode Unruh channel for a fermionic qubit seen from Rindler region I:
// |0> -> cos r |0>_I|0>_II + sin r |1>_I|1>_II, |1> -> |1>_I|0>_II, with
// region II traced out. K0 = cos r |0><0| + |1><1|, K1 = sin r |1><0|.
KrausPair unruh_kraus(UnruhParameter r);

ComplexMatrix apply_channel(const ComplexMatrix& rho, const KrausPair& kraus, Qubit target);

TwoQubitState apply_unruh(const TwoQubitState& rho, Qubit target, UnruhParameter r);

// Werner state with the second qubit accelerated.
TwoQubitState alice_rob_state(double p, UnruhParameter r);

}  // namespace uqi
