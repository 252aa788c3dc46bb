#include <doctest.h>

#include <limits>
#include <random>

#include "oracles.hpp"
#include "unruhqi/steering.hpp"

using namespace uqi;

namespace {

const double kQuarter = oracle::kPi / 4;
const double kEighth = oracle::kPi / 8;

Vec3 random_direction(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  Vec3 v{gauss(rng), gauss(rng), gauss(rng)};
  return (1.0 / norm(v)) * v;
}

// (v - c)^T Q^{-1} (v - c) via the eigendecomposition stored in the ellipsoid.
double ellipsoid_form(const SteeringEllipsoid& e, const Vec3& v) {
  const Vec3 d = v - e.center;
  double sum = 0.0;
  for (std::size_t k = 0; k < 3; ++k) {
    const double proj = dot(e.axes.column(k), d);
    sum += proj * proj / (e.semiaxes[k] * e.semiaxes[k]);
  }
  return sum;
}

}  // namespace

TEST_CASE("werner ellipsoids are spheres of radius p") {
  for (double p : {0.0, 0.3, 0.9, 1.0}) {
    for (Qubit q : {Qubit::first, Qubit::second}) {
      const SteeringEllipsoid e = steering_ellipsoid(werner(p), q);
      for (std::size_t k = 0; k < 3; ++k) {
        CHECK(std::abs(e.center[k]) <= 1e-15);
        CHECK(e.semiaxes[k] == doctest::Approx(p).epsilon(1e-14));
      }
    }
  }
}

TEST_CASE("accelerated werner ellipsoid matches the closed form") {
  for (int i = 0; i < 20; ++i) {
    for (int j = 0; j < 20; ++j) {
      const double p = i / 19.0;
      const double r = kQuarter * j / 19.0;
      const double s2 = std::sin(r) * std::sin(r);
      const SteeringEllipsoid e = steering_ellipsoid(alice_rob_state(p, UnruhParameter(r)), Qubit::first);
      CHECK(std::abs(e.center[0]) <= 1e-10);
      CHECK(std::abs(e.center[1]) <= 1e-10);
      CHECK(std::abs(e.center[2] - p * s2 / (s2 + 1)) <= 1e-10);
      CHECK(std::abs(e.semiaxes[0] - p / std::sqrt(s2 + 1)) <= 1e-10);
      CHECK(std::abs(e.semiaxes[1] - p / std::sqrt(s2 + 1)) <= 1e-10);
      CHECK(std::abs(e.semiaxes[2] - p / (s2 + 1)) <= 1e-10);
    }
  }
  const SteeringEllipsoid e = steering_ellipsoid(alice_rob_state(0.9, UnruhParameter(kQuarter)), Qubit::first);
  CHECK(e.center[2] == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(e.semiaxes[0] == doctest::Approx(0.7348469228349535).epsilon(1e-12));
  CHECK(e.semiaxes[2] == doctest::Approx(0.6).epsilon(1e-12));

  // The accelerated qubit's own ellipsoid: center b, semiaxes p cos r, p cos r, p cos^2 r.
  const SteeringEllipsoid second = steering_ellipsoid(alice_rob_state(0.9, UnruhParameter(kQuarter)), Qubit::second);
  CHECK(second.center[2] == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(second.semiaxes[0] == doctest::Approx(0.9 * std::sqrt(0.5)).epsilon(1e-12));
  CHECK(second.semiaxes[2] == doctest::Approx(0.45).epsilon(1e-12));
}

TEST_CASE("ellipsoid surface contains every projectively steered state") {
  std::mt19937_64 rng(314);
  for (int trial = 0; trial < 30; ++trial) {
    const TwoQubitState rho(oracle::random_density(rng));
    for (Qubit q : {Qubit::first, Qubit::second}) {
      const SteeringEllipsoid e = steering_ellipsoid(rho, q);
      CHECK(norm(e.center) <= 1 + 1e-10);
      const Mat3 gram = e.axes.transpose() * e.axes;
      for (std::size_t k = 0; k < 9; ++k) CHECK(std::abs(gram.data[k] - Mat3::identity().data[k]) <= 1e-10);
      for (int m = 0; m < 10; ++m) {
        const Vec3 v = oracle::steered_bloch(rho.matrix(), q, random_direction(rng));
        CHECK(ellipsoid_form(e, v) == doctest::Approx(1.0).epsilon(1e-8));
      }
      for (const Vec3& point : ellipsoid_surface(e, 200)) CHECK(norm(point) <= 1 + 1e-8);
    }
  }
}

TEST_CASE("nested-ball property on the accelerated grid") {
  for (int i = 0; i <= 10; ++i) {
    for (int j = 0; j <= 10; ++j) {
      const TwoQubitState rho = alice_rob_state(i / 10.0, UnruhParameter(kQuarter * j / 10));
      for (Qubit q : {Qubit::first, Qubit::second}) {
        for (const Vec3& point : ellipsoid_surface(steering_ellipsoid(rho, q), 100)) CHECK(norm(point) <= 1 + 1e-8);
      }
    }
  }
}

TEST_CASE("pure partner marginal is rejected") {
  const ComplexMatrix up = ComplexMatrix::diagonal({1.0, 0.0});
  const TwoQubitState product(kron(pauli::identity() * Complex{0.5}, up));
  CHECK_THROWS_AS(steering_ellipsoid(product, Qubit::first), std::domain_error);
  CHECK_NOTHROW(steering_ellipsoid(product, Qubit::second));
}

TEST_CASE("ellipsoid_surface uses a Fibonacci lattice") {
  const SteeringEllipsoid e = steering_ellipsoid(werner(0.9), Qubit::first);
  const std::vector<Vec3> points = ellipsoid_surface(e, 8);
  CHECK(points.size() == 8);
  for (const Vec3& p : points) CHECK(norm(p) == doctest::Approx(0.9));
  CHECK_THROWS_AS(ellipsoid_surface(e, 0), std::invalid_argument);
}

TEST_CASE("canonical_state") {
  const TwoQubitState ar = alice_rob_state(0.7, UnruhParameter(0.5));
  CHECK(max_abs_diff(canonical_state(ar).matrix(), ar.matrix()) <= 1e-14);

  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 20; ++trial) {
    const TwoQubitState rho(oracle::random_density(rng));
    const TwoQubitState canon = canonical_state(rho);
    CHECK(max_abs_diff(canon.marginal(Qubit::first), pauli::identity() * Complex{0.5}) <= 1e-10);
    const SteeringEllipsoid before = steering_ellipsoid(rho, Qubit::second);
    const SteeringEllipsoid after = steering_ellipsoid(canon, Qubit::second);
    for (std::size_t k = 0; k < 3; ++k) {
      CHECK(std::abs(before.center[k] - after.center[k]) <= 1e-8);
      CHECK(std::abs(before.semiaxes[k] - after.semiaxes[k]) <= 1e-8);
    }
  }

  // A locally filtered Werner state recovers the Werner sphere.
  ComplexMatrix filter(2, {1.3, Complex{0.2, 0.1}, 0.0, 0.6});
  const TwoQubitState filtered = local_filter(werner(0.8), filter, Qubit::first);
  const SteeringEllipsoid sphere = steering_ellipsoid(canonical_state(filtered), Qubit::second);
  for (std::size_t k = 0; k < 3; ++k) CHECK(sphere.semiaxes[k] == doctest::Approx(0.8).epsilon(1e-10));

  const ComplexMatrix up = ComplexMatrix::diagonal({1.0, 0.0});
  CHECK_THROWS_AS(canonical_state(TwoQubitState(kron(up, pauli::identity() * Complex{0.5}))), std::domain_error);
}

TEST_CASE("SLOCC filters on the measured party leave the ellipsoid unchanged") {
  std::mt19937_64 rng(1234);
  const TwoQubitState base = alice_rob_state(0.85, UnruhParameter(0.6));
  for (int trial = 0; trial < 50; ++trial) {
    ComplexMatrix f = oracle::random_matrix(rng, 2);
    // keep the filter comfortably invertible
    f += ComplexMatrix::identity(2) * Complex{2.0};
    for (Qubit steered : {Qubit::first, Qubit::second}) {
      const Qubit measured = steered == Qubit::first ? Qubit::second : Qubit::first;
      const SteeringEllipsoid before = steering_ellipsoid(base, steered);
      const SteeringEllipsoid after = steering_ellipsoid(local_filter(base, f, measured), steered);
      for (std::size_t k = 0; k < 3; ++k) {
        CHECK(std::abs(before.center[k] - after.center[k]) <= 1e-8);
        CHECK(std::abs(before.semiaxes[k] - after.semiaxes[k]) <= 1e-8);
      }
    }
  }
}

TEST_CASE("msc_closed_form") {
  for (int i = 0; i <= 10; ++i) {
    for (int j = 0; j <= 10; ++j) {
      const double p = i / 10.0;
      const double r = kQuarter * j / 10;
      const double s2 = std::sin(r) * std::sin(r);
      const double msc = msc_closed_form(alice_rob_state(p, UnruhParameter(r)), Qubit::first);
      CHECK(msc == doctest::Approx(p / std::sqrt(s2 + 1)).epsilon(1e-12));
      CHECK(msc >= std::sqrt(2.0 / 3.0) * p - 1e-12);
      CHECK(msc <= p + 1e-12);
      // Accelerated qubit: non-degenerate marginal along z for r > 0.
      CHECK(msc_closed_form(alice_rob_state(p, UnruhParameter(r)), Qubit::second) ==
            doctest::Approx(p * std::cos(r)).epsilon(1e-12));
    }
  }
  CHECK(msc_closed_form(werner(0.6), Qubit::first) == doctest::Approx(0.6));
  CHECK(msc_closed_form(alice_rob_state(0.9, UnruhParameter(kQuarter)), Qubit::first) ==
        doctest::Approx(0.7348469228349535).epsilon(1e-12));

  ComplexMatrix general = ComplexMatrix::identity(4) * Complex{0.25};
  general(0, 1) = general(1, 0) = 0.05;
  CHECK_THROWS_AS(msc_closed_form(TwoQubitState(general), Qubit::first), std::domain_error);

  // Degenerate marginal, transverse semiaxes differ: T = diag(0.6, -0.2, 0.3).
  PauliDecomposition d;
  d.T = Mat3::diagonal(0.6, -0.2, 0.3);
  CHECK_THROWS_AS(msc_closed_form(pauli_compose(d), Qubit::first), std::domain_error);
}

TEST_CASE("msc_oracle agrees with the geometry") {
  CHECK(std::abs(msc_oracle(alice_rob_state(0.9, UnruhParameter(kQuarter)), Qubit::first, 64, 40) -
                 0.7348469228349535) <= 1e-4);
  CHECK(std::abs(msc_oracle(werner(0.5), Qubit::first, 64, 40) - 0.5) <= 1e-4);
  CHECK(msc_oracle(werner(0.0), Qubit::first, 64, 40) <= 1e-12);
  for (double r : {kEighth, kQuarter}) {
    const TwoQubitState rho = alice_rob_state(0.8, UnruhParameter(r));
    CHECK(std::abs(msc_oracle(rho, Qubit::second, 64, 40) - msc_closed_form(rho, Qubit::second)) <= 1e-4);
  }
  // Degenerate marginal without rotational symmetry: T = diag(0.6, -0.2, 0.3),
  // centered ellipsoid, infimum attained along the longest axis -> 0.3.
  PauliDecomposition d;
  d.T = Mat3::diagonal(0.6, -0.2, 0.3);
  CHECK(std::abs(msc_oracle(pauli_compose(d), Qubit::first, 64, 40) - 0.3) <= 1e-4);
  CHECK_THROWS_AS(msc_oracle(werner(0.5), Qubit::first, 1, 40), std::invalid_argument);
}

TEST_CASE("msc_oracle is deterministic") {
  const TwoQubitState rho = alice_rob_state(0.7, UnruhParameter(0.3));
  CHECK(msc_oracle(rho, Qubit::first, 32, 30) == msc_oracle(rho, Qubit::first, 32, 30));
}

TEST_CASE("critical_radius_analytic") {
  CHECK(critical_radius_analytic(0.5, UnruhParameter(0.0)).value == doctest::Approx(1.0).epsilon(1e-15));
  const CriticalRadiusResult mid = critical_radius_analytic(0.7, UnruhParameter(kQuarter));
  CHECK(mid.value == doctest::Approx(1.1113843704238363).epsilon(1e-14));
  CHECK(mid.unsteerable);
  const CriticalRadiusResult bell = critical_radius_analytic(1.0, UnruhParameter(0.0));
  CHECK(bell.value == doctest::Approx(0.5));
  CHECK_FALSE(bell.unsteerable);
  const CriticalRadiusResult none = critical_radius_analytic(0.0, UnruhParameter(0.3));
  CHECK(none.value == std::numeric_limits<double>::infinity());
  CHECK(none.unsteerable);
  // Continuity across the series switch.
  CHECK(std::abs(r_cot_r(0.99999e-4) - r_cot_r(1.00001e-4)) <= 1e-12);
}

TEST_CASE("steerability_threshold") {
  CHECK(steerability_threshold(UnruhParameter(0.0)) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(steerability_threshold(UnruhParameter(kQuarter)) == doctest::Approx(4 / (2 + oracle::kPi)).epsilon(1e-14));
  CHECK(steerability_threshold(UnruhParameter(kEighth)) == doctest::Approx(0.5550582111988223).epsilon(1e-14));
  double previous = 0.0;
  for (int j = 0; j <= 40; ++j) {
    const UnruhParameter r(kQuarter * j / 40);
    const double ps = steerability_threshold(r);
    CHECK(ps >= previous);
    previous = ps;
    CHECK(std::abs(critical_radius_analytic(ps, r).value - 1.0) <= 1e-10);
  }
}

TEST_CASE("gauss_legendre rules") {
  for (int n : {1, 2, 5, 16, 64}) {
    const QuadratureRule rule = gauss_legendre(n);
    double weight_sum = 0.0;
    double highest = 0.0;  // integral of x^(2n-2) on [-1, 1] is 2/(2n-1)
    for (int i = 0; i < n; ++i) {
      weight_sum += rule.weights[i];
      highest += rule.weights[i] * std::pow(rule.nodes[i], 2 * n - 2);
    }
    CHECK(weight_sum == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(highest == doctest::Approx(2.0 / (2 * n - 1)).epsilon(1e-12));
  }
}

TEST_CASE("critical_radius_quadrature") {
  for (double p : {0.3, 0.7, 1.0}) {
    CHECK(critical_radius_quadrature(Mat3::diagonal(p, -p, p), 16).value ==
          doctest::Approx(1 / (2 * p)).epsilon(1e-13));
  }
  CHECK(critical_radius_quadrature(Mat3::identity(), 8).value == doctest::Approx(0.5).epsilon(1e-14));

  const double p = 0.7;
  const double c = std::cos(kQuarter);
  const Mat3 T = Mat3::diagonal(p * c, -p * c, p * c * c);
  const double exact = critical_radius_analytic(p, UnruhParameter(kQuarter)).value;
  CHECK(std::abs(critical_radius_quadrature(T, 64).value - exact) <= 1e-6);

  double previous_error = std::numeric_limits<double>::infinity();
  for (int nodes : {2, 4, 8}) {
    const double error = std::abs(critical_radius_quadrature(T, nodes).value - exact);
    CHECK(error < previous_error);
    previous_error = error;
  }

  // Anisotropic in phi as well.
  const Mat3 skew = Mat3::diagonal(0.5, -0.3, 0.4);
  CHECK(std::abs(critical_radius_quadrature(skew, 64).value - critical_radius_quadrature(skew, 128).value) <= 1e-10);

  CHECK_THROWS_AS(critical_radius_quadrature(Mat3::diagonal(0.5, 0.0, 0.5), 32), std::domain_error);
  Mat3 off = Mat3::identity();
  off(0, 1) = 0.1;
  CHECK_THROWS_AS(critical_radius_quadrature(off, 32), std::invalid_argument);
}
