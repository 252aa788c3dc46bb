#include "unruhqi/steering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "unruhqi/tolerances.hpp"

namespace uqi {

namespace {

constexpr double kPi = std::numbers::pi;

Qubit partner(Qubit q) { return q == Qubit::first ? Qubit::second : Qubit::first; }

// ---------------------------------------------------------------------------
// Measurement-sweep machinery for msc_oracle.

// Steered operator for M = (I + m.sigma)/2 on the measured qubit is
// (base + sum_k m_k slope[k]) / 2, expressed in the reference basis.
struct SteeredFamily {
  ComplexMatrix base{2};
  std::array<ComplexMatrix, 3> slope{ComplexMatrix{2}, ComplexMatrix{2}, ComplexMatrix{2}};
};

SteeredFamily steered_family(const TwoQubitState& rho, Qubit steered) {
  const Qubit measured = partner(steered);
  SteeredFamily family;
  family.base = reduce(rho.matrix(), measured);
  for (std::size_t k = 0; k < 3; ++k) {
    const ComplexMatrix op = measured == Qubit::first ? kron(pauli::sigma(k), pauli::identity())
                                                      : kron(pauli::identity(), pauli::sigma(k));
    family.slope[k] = reduce(op * rho.matrix(), measured);
  }
  return family;
}

SteeredFamily in_basis(const SteeredFamily& f, const ComplexMatrix& basis) {
  const ComplexMatrix dag = basis.adjoint();
  SteeredFamily out;
  out.base = dag * f.base * basis;
  for (std::size_t k = 0; k < 3; ++k) out.slope[k] = dag * f.slope[k] * basis;
  return out;
}

Vec3 direction(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

// l1 coherence of the normalized steered state as an explicit function of the
// measurement direction m: 2 |off(m)| / weight(m), both affine in m.
struct CoherenceMap {
  std::array<double, 4> off_re{}, off_im{}, weight{};

  explicit CoherenceMap(const SteeredFamily& f) {
    const ComplexMatrix* terms[4] = {&f.base, &f.slope[0], &f.slope[1], &f.slope[2]};
    for (std::size_t k = 0; k < 4; ++k) {
      off_re[k] = (*terms[k])(0, 1).real();
      off_im[k] = (*terms[k])(0, 1).imag();
      weight[k] = ((*terms[k])(0, 0) + (*terms[k])(1, 1)).real();
    }
  }

  double operator()(const Vec3& m) const {
    const double w = weight[0] + m[0] * weight[1] + m[1] * weight[2] + m[2] * weight[3];
    if (w <= 1e-12) return 0.0;
    const double re = off_re[0] + m[0] * off_re[1] + m[1] * off_re[2] + m[2] * off_re[3];
    const double im = off_im[0] + m[0] * off_im[1] + m[1] * off_im[2] + m[2] * off_im[3];
    return 2.0 * std::hypot(re, im) / w;
  }
};

// Golden-section search for the maximum of f on [lo, hi].
template <typename F>
std::pair<double, double> golden_max(F&& f, double lo, double hi, int iters) {
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - ratio * (hi - lo);
  double x2 = lo + ratio * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int i = 0; i < iters; ++i) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + ratio * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - ratio * (hi - lo);
      f1 = f(x1);
    }
  }
  return f1 >= f2 ? std::pair{x1, f1} : std::pair{x2, f2};
}

constexpr int kRefineCycles = 4;

// Sample points of a (rows + 1) x cols grid over theta in [0, theta_hi] and a
// phi span; a single point at each pole.
struct SphereGrid {
  double theta_hi = kPi;
  int rows = 0;
  int cols = 0;
  double dtheta = 0.0;
  double dphi = 0.0;
  std::vector<std::pair<double, double>> angles;
  std::vector<Vec3> points;

  SphereGrid(double theta_max, int row_count, int col_count, double phi_span)
      : theta_hi(theta_max), rows(row_count), cols(col_count), dtheta(theta_max / row_count),
        dphi(phi_span / col_count) {
    for (int i = 0; i <= rows; ++i) {
      const double theta = i * dtheta;
      const int phi_count = (i == 0 || (i == rows && theta_hi >= kPi)) ? 1 : cols;
      for (int j = 0; j < phi_count; ++j) {
        angles.emplace_back(theta, j * dphi);
        points.push_back(direction(theta, j * dphi));
      }
    }
  }
};

// Maximum of g(theta, phi) over the grid's domain, phi periodic: best grid
// point (ties keep the first), then alternating golden-section line searches
// around it. `at_point(k)` evaluates g at grid point k.
template <typename G, typename P>
double maximize_on_sphere(G&& g, P&& at_point, const SphereGrid& grid, int iters) {
  double best = -std::numeric_limits<double>::infinity();
  std::size_t best_k = 0;
  for (std::size_t k = 0; k < grid.points.size(); ++k) {
    const double value = at_point(k);
    if (value > best) {
      best = value;
      best_k = k;
    }
  }
  auto [best_theta, best_phi] = grid.angles[best_k];
  for (int cycle = 0; cycle < kRefineCycles; ++cycle) {
    const auto [t, ft] = golden_max([&](double t) { return g(t, best_phi); },
                                    std::max(0.0, best_theta - grid.dtheta),
                                    std::min(grid.theta_hi, best_theta + grid.dtheta), iters);
    if (ft > best) {
      best = ft;
      best_theta = t;
    }
    const auto [p, fp] = golden_max([&](double p) { return g(best_theta, p); }, best_phi - grid.dphi,
                                    best_phi + grid.dphi, iters);
    if (fp > best) {
      best = fp;
      best_phi = p;
    }
  }
  return best;
}

double max_coherence(const SteeredFamily& f, const SphereGrid& grid, int refine_iters) {
  const CoherenceMap coherence(f);
  return maximize_on_sphere([&](double t, double p) { return coherence(direction(t, p)); },
                            [&](std::size_t k) { return coherence(grid.points[k]); }, grid, refine_iters);
}

// Eigenbasis of u.sigma as columns.
ComplexMatrix reference_basis(const Vec3& u) {
  const ComplexMatrix op = pauli::x() * Complex{u[0]} + pauli::y() * Complex{u[1]} + pauli::z() * Complex{u[2]};
  return hermitian_eig(op).vectors;
}

// ---------------------------------------------------------------------------

Mat3 ellipsoid_matrix(const Vec3& a, const Vec3& b, const Mat3& T, double denom) {
  const Mat3 left = (1.0 / denom) * (T - Mat3::outer(a, b));
  const Mat3 middle = Mat3::identity() + (1.0 / denom) * Mat3::outer(b, b);
  const Mat3 right = T.transpose() - Mat3::outer(b, a);
  return left * middle * right;
}

}  // namespace

SteeringEllipsoid steering_ellipsoid(const PauliDecomposition& d, Qubit steered) {
  // Steered = first: measurements on the second qubit. Steered = second is
  // the same construction with a <-> b and T <-> T^T.
  const Vec3& own = steered == Qubit::first ? d.a : d.b;
  const Vec3& other = steered == Qubit::first ? d.b : d.a;
  const Mat3 T = steered == Qubit::first ? d.T : d.T.transpose();

  const double other_sq = dot(other, other);
  if (1.0 - std::sqrt(other_sq) < kTol.pure_marginal) {
    throw std::domain_error(
        "steering_ellipsoid: the measured qubit's marginal is pure, so local measurements on it "
        "cannot steer its partner (1 - |b|^2 vanishes)");
  }
  const double denom = 1.0 - other_sq;

  SteeringEllipsoid e;
  e.center = (1.0 / denom) * (own - T * other);
  e.matrix = ellipsoid_matrix(own, other, T, denom);
  // Q is symmetric in exact arithmetic; remove rounding asymmetry.
  e.matrix = 0.5 * (e.matrix + e.matrix.transpose());
  const SymmetricEigen3 eig = symmetric_eig(e.matrix);
  for (std::size_t k = 0; k < 3; ++k) {
    if (eig.values[k] < kTol.psd) {
      throw std::runtime_error("steering_ellipsoid: ellipsoid matrix has a negative eigenvalue");
    }
    e.semiaxes[k] = std::sqrt(std::max(0.0, eig.values[k]));
  }
  e.axes = eig.vectors;
  return e;
}

SteeringEllipsoid steering_ellipsoid(const TwoQubitState& rho, Qubit steered) {
  return steering_ellipsoid(pauli_decompose(rho), steered);
}

std::vector<Vec3> ellipsoid_surface(const SteeringEllipsoid& e, int samples) {
  if (samples < 1) throw std::invalid_argument("ellipsoid_surface: samples must be positive");
  const double golden_angle = kPi * (3.0 - std::sqrt(5.0));
  std::vector<Vec3> points;
  points.reserve(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / samples;
    const double radius = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden_angle * i;
    const Vec3 unit{radius * std::cos(phi), radius * std::sin(phi), z};
    const Vec3 scaled{e.semiaxes[0] * unit[0], e.semiaxes[1] * unit[1], e.semiaxes[2] * unit[2]};
    points.push_back(e.center + e.axes * scaled);
  }
  return points;
}

TwoQubitState local_filter(const TwoQubitState& rho, const ComplexMatrix& filter, Qubit target) {
  if (filter.dim() != 2) throw std::invalid_argument("local_filter: filter must be 2x2");
  const ComplexMatrix lifted =
      target == Qubit::first ? kron(filter, pauli::identity()) : kron(pauli::identity(), filter);
  ComplexMatrix out = lifted * rho.matrix() * lifted.adjoint();
  const double weight = out.trace().real();
  if (!(weight > 1e-14)) throw std::domain_error("local_filter: filter annihilates the state");
  out *= 1.0 / weight;
  // Rounding in the products leaves O(eps) anti-Hermitian residue.
  out = 0.5 * (out + out.adjoint());
  return TwoQubitState(out, rho.label());
}

TwoQubitState canonical_state(const TwoQubitState& rho) {
  const EigenResult eig = hermitian_eig(rho.marginal(Qubit::first));
  if (eig.values[1] <= kTol.invertible) {
    throw std::domain_error("canonical_state: first marginal is singular (pure)");
  }
  ComplexMatrix filter(2);
  for (std::size_t k = 0; k < 2; ++k) {
    const double scale = 1.0 / std::sqrt(2.0 * eig.values[k]);
    for (std::size_t r = 0; r < 2; ++r) {
      for (std::size_t c = 0; c < 2; ++c) {
        filter(r, c) += scale * eig.vectors(r, k) * std::conj(eig.vectors(c, k));
      }
    }
  }
  return local_filter(rho, filter, Qubit::first);
}

double msc_closed_form(const TwoQubitState& rho, Qubit steered) {
  if (!is_x_state(rho, kTol.x_state)) {
    throw std::domain_error("msc_closed_form: state is not an X-state; use msc_oracle");
  }
  const PauliDecomposition d = pauli_decompose(rho);
  const SteeringEllipsoid e = steering_ellipsoid(d, steered);
  // For an X-state Q is block diagonal in (x, y) | z.
  const double qxx = e.matrix(0, 0);
  const double qyy = e.matrix(1, 1);
  const double qxy = e.matrix(0, 1);
  const double mean = 0.5 * (qxx + qyy);
  const double split = std::sqrt(0.25 * (qxx - qyy) * (qxx - qyy) + qxy * qxy);
  const double major = std::sqrt(std::max(0.0, mean + split));
  const double minor = std::sqrt(std::max(0.0, mean - split));

  const Vec3& bloch = steered == Qubit::first ? d.a : d.b;
  if (norm(bloch) >= kTol.degenerate_marginal) return major;

  if (major - minor > 1e-10) {
    throw std::domain_error(
        "msc_closed_form: degenerate steered marginal and an ellipsoid that is not symmetric about z; "
        "the infimum over reference bases has no closed form here, use msc_oracle");
  }
  return major;
}

double msc_oracle(const TwoQubitState& rho, Qubit steered, int grid_density, int refine_iters) {
  if (grid_density < 2 || refine_iters < 0) {
    throw std::invalid_argument("msc_oracle: grid_density must be >= 2 and refine_iters >= 0");
  }
  const SteeredFamily family = steered_family(rho, steered);
  const EigenResult marginal = hermitian_eig(family.base);
  const SphereGrid measurements(kPi, grid_density, 2 * grid_density, 2.0 * kPi);
  if (marginal.values[0] - marginal.values[1] >= kTol.degenerate_marginal) {
    return max_coherence(in_basis(family, marginal.vectors), measurements, refine_iters);
  }

  // Degenerate marginal: infimum over reference axes u in the upper hemisphere
  // (u and -u define the same basis).
  const int rows = std::max(4, grid_density / 8);
  const SphereGrid axes(kPi / 2.0, rows, 2 * rows, kPi);
  auto cost = [&](double theta, double phi) {
    const SteeredFamily f = in_basis(family, reference_basis(direction(theta, phi)));
    return -max_coherence(f, measurements, refine_iters);
  };
  return -maximize_on_sphere(cost, [&](std::size_t k) { return cost(axes.angles[k].first, axes.angles[k].second); },
                             axes, refine_iters);
}

double r_cot_r(double r) {
  if (std::abs(r) < 1e-4) {
    const double r2 = r * r;
    return 1.0 - r2 / 3.0 - r2 * r2 / 45.0;
  }
  return r / std::tan(r);
}

CriticalRadiusResult critical_radius_analytic(double p, UnruhParameter r) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("critical_radius_analytic: p must lie in [0, 1]");
  }
  CriticalRadiusResult result;
  result.method = CriticalRadiusMethod::analytic;
  if (p == 0.0) {
    result.value = std::numeric_limits<double>::infinity();
    result.unsteerable = true;
    return result;
  }
  const double c = std::cos(r.value());
  result.value = 1.0 / (p * (c * c + r_cot_r(r.value())));
  result.unsteerable = result.value >= 1.0;
  return result;
}

double steerability_threshold(UnruhParameter r) {
  const double c = std::cos(r.value());
  return 1.0 / (c * c + r_cot_r(r.value()));
}

QuadratureRule gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: need at least one node");
  QuadratureRule rule{std::vector<double>(n), std::vector<double>(n)};
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double derivative = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      if (n == 1) p0 = 1.0;
      derivative = n * (x * p1 - p0) / (x * x - 1.0);
      const double step = p1 / derivative;
      x -= step;
      if (std::abs(step) < 1e-16) break;
    }
    const double weight = 2.0 / ((1.0 - x * x) * derivative * derivative);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = weight;
    rule.weights[n - 1 - i] = weight;
  }
  return rule;
}

CriticalRadiusResult critical_radius_quadrature(const Mat3& T, int nodes) {
  if (nodes < 1) throw std::invalid_argument("critical_radius_quadrature: nodes must be positive");
  for (std::size_t r = 0; r < 3; ++r) {
    for (std::size_t c = 0; c < 3; ++c) {
      if (r != c && std::abs(T(r, c)) > 1e-12) {
        throw std::invalid_argument("critical_radius_quadrature: T must be diagonal");
      }
    }
  }
  const double det = T(0, 0) * T(1, 1) * T(2, 2);
  if (det == 0.0 || !std::isfinite(det)) {
    throw std::domain_error("critical_radius_quadrature: T is singular; the T-state formula does not apply");
  }
  const Vec3 inv_sq{1.0 / (T(0, 0) * T(0, 0)), 1.0 / (T(1, 1) * T(1, 1)), 1.0 / (T(2, 2) * T(2, 2))};

  const QuadratureRule rule = gauss_legendre(nodes);
  const int phi_nodes = 2 * nodes;
  const double dphi = 2.0 * kPi / phi_nodes;
  double integral = 0.0;
  for (int i = 0; i < nodes; ++i) {
    const double u = rule.nodes[i];
    const double transverse = 1.0 - u * u;
    double ring = 0.0;
    for (int j = 0; j < phi_nodes; ++j) {
      const double phi = j * dphi;
      const double c = std::cos(phi);
      const double s = std::sin(phi);
      const double form = transverse * (c * c * inv_sq[0] + s * s * inv_sq[1]) + u * u * inv_sq[2];
      ring += 1.0 / (form * form);
    }
    integral += rule.weights[i] * ring * dphi;
  }
  CriticalRadiusResult result;
  result.method = CriticalRadiusMethod::quadrature;
  result.value = 2.0 * kPi * std::abs(det) / integral;
  result.unsteerable = result.value >= 1.0;
  return result;
}

}  // namespace uqi
