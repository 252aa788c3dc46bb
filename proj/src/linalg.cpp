#include "unruhqi/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "unruhqi/tolerances.hpp"

namespace uqi {

namespace {

void require_dim(std::size_t dim) {
  if (dim != 2 && dim != 4) {
    throw std::invalid_argument("matrix dimension must be 2 or 4, got " + std::to_string(dim));
  }
}

void require_same_dim(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
  if (lhs.dim() != rhs.dim()) {
    throw std::invalid_argument("matrix dimension mismatch: " + std::to_string(lhs.dim()) +
                                " vs " + std::to_string(rhs.dim()));
  }
}

// Dense n x n working storage for the Jacobi solver (n <= 4).
struct Work {
  std::size_t n;
  std::array<Complex, 16> a{};
  Complex& operator()(std::size_t r, std::size_t c) { return a[r * n + c]; }
  Complex operator()(std::size_t r, std::size_t c) const { return a[r * n + c]; }
};

double off_diagonal_norm(const Work& w) {
  double sum = 0.0;
  for (std::size_t r = 0; r < w.n; ++r) {
    for (std::size_t c = 0; c < w.n; ++c) {
      if (r != c) sum += std::norm(w(r, c));
    }
  }
  return std::sqrt(sum);
}

struct RawEigen {
  std::vector<double> values;
  Work vectors;
};

// Cyclic Jacobi with sweep order (0,1), (0,2), ..., (n-2,n-1). Each rotation is
// U = D R where D removes the phase of a_pq and R is the real Jacobi rotation.
// Entries that are exactly zero are never rotated, so sparsity patterns such
// as the X shape survive exactly.
RawEigen jacobi(Work a) {
  const std::size_t n = a.n;
  Work v{n};
  for (std::size_t i = 0; i < n; ++i) v(i, i) = 1.0;

  int sweep = 0;
  while (off_diagonal_norm(a) >= kTol.jacobi_off_diagonal) {
    if (++sweep > kTol.jacobi_max_sweeps) {
      throw std::runtime_error("Jacobi eigensolver did not converge");
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double g = std::abs(apq);
        if (g == 0.0) continue;
        const Complex phase = std::conj(apq) / g;  // D_qq
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * g);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        // Columns p, q of U = D R.
        const Complex u_pp = c;
        const Complex u_pq = s;
        const Complex u_qp = -s * phase;
        const Complex u_qq = c * phase;

        // A <- A U (columns p, q)
        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = akp * u_pp + akq * u_qp;
          a(k, q) = akp * u_pq + akq * u_qq;
        }
        // A <- U^dagger A (rows p, q)
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = std::conj(u_pp) * apk + std::conj(u_qp) * aqk;
          a(q, k) = std::conj(u_pq) * apk + std::conj(u_qq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        // V <- V U
        for (std::size_t k = 0; k < n; ++k) {
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = vkp * u_pp + vkq * u_qp;
          v(k, q) = vkp * u_pq + vkq * u_qq;
        }
      }
    }
  }

  // Phase convention, then sort by value (descending) with lexicographic
  // eigenvector order breaking exact ties.
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t best = 0;
    for (std::size_t r = 1; r < n; ++r) {
      if (std::abs(v(r, col)) > std::abs(v(best, col))) best = r;
    }
    const Complex ref = v(best, col);
    const Complex fix = std::conj(ref) / std::abs(ref);
    for (std::size_t r = 0; r < n; ++r) v(r, col) *= fix;
    v(best, col) = std::abs(ref);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  auto lex_greater = [&](std::size_t i, std::size_t j) {
    for (std::size_t r = 0; r < n; ++r) {
      if (v(r, i).real() != v(r, j).real()) return v(r, i).real() > v(r, j).real();
      if (v(r, i).imag() != v(r, j).imag()) return v(r, i).imag() > v(r, j).imag();
    }
    return false;
  };
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    const double vi = a(i, i).real();
    const double vj = a(j, j).real();
    if (vi != vj) return vi > vj;
    return lex_greater(i, j);
  });

  RawEigen out{{}, Work{n}};
  out.values.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    out.values.push_back(a(order[k], order[k]).real());
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, k) = v(r, order[k]);
  }
  return out;
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim) { require_dim(dim); }

ComplexMatrix::ComplexMatrix(std::size_t dim, std::initializer_list<Complex> row_major) : dim_(dim) {
  require_dim(dim);
  if (row_major.size() != dim * dim) {
    throw std::invalid_argument("expected " + std::to_string(dim * dim) + " entries, got " +
                                std::to_string(row_major.size()));
  }
  std::copy(row_major.begin(), row_major.end(), data_.begin());
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::initializer_list<double> values) {
  ComplexMatrix m(values.size());
  std::size_t i = 0;
  for (double d : values) {
    m(i, i) = d;
    ++i;
  }
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(dim_);
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t c = 0; c < dim_; ++c) out(c, r) = std::conj((*this)(r, c));
  }
  return out;
}

ComplexMatrix ComplexMatrix::conjugate() const {
  ComplexMatrix out(dim_);
  for (std::size_t i = 0; i < dim_ * dim_; ++i) out.data_[i] = std::conj(data_[i]);
  return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(dim_);
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t c = 0; c < dim_; ++c) out(c, r) = (*this)(r, c);
  }
  return out;
}

Complex ComplexMatrix::trace() const {
  Complex sum = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) sum += (*this)(i, i);
  return sum;
}

bool ComplexMatrix::is_hermitian(double tol) const { return max_abs_diff(*this, adjoint()) <= tol; }

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
  require_same_dim(*this, rhs);
  for (std::size_t i = 0; i < dim_ * dim_; ++i) data_[i] += rhs.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
  require_same_dim(*this, rhs);
  for (std::size_t i = 0; i < dim_ * dim_; ++i) data_[i] -= rhs.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) {
  for (std::size_t i = 0; i < dim_ * dim_; ++i) data_[i] *= scale;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
  require_same_dim(lhs, rhs);
  const std::size_t n = lhs.dim();
  ComplexMatrix out(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t k = 0; k < n; ++k) {
      const Complex l = lhs(r, k);
      if (l == Complex{}) continue;
      for (std::size_t c = 0; c < n; ++c) out(r, c) += l * rhs(k, c);
    }
  }
  return out;
}

bool operator==(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
  return lhs.dim_ == rhs.dim_ &&
         std::equal(lhs.data_.begin(), lhs.data_.begin() + lhs.dim_ * lhs.dim_, rhs.data_.begin());
}

double max_abs_diff(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
  require_same_dim(lhs, rhs);
  double worst = 0.0;
  for (std::size_t r = 0; r < lhs.dim(); ++r) {
    for (std::size_t c = 0; c < lhs.dim(); ++c) worst = std::max(worst, std::abs(lhs(r, c) - rhs(r, c)));
  }
  return worst;
}

namespace pauli {
const ComplexMatrix& identity() {
  static const ComplexMatrix m = ComplexMatrix::identity(2);
  return m;
}
const ComplexMatrix& x() {
  static const ComplexMatrix m(2, {0.0, 1.0, 1.0, 0.0});
  return m;
}
const ComplexMatrix& y() {
  static const ComplexMatrix m(2, {0.0, Complex{0.0, -1.0}, Complex{0.0, 1.0}, 0.0});
  return m;
}
const ComplexMatrix& z() {
  static const ComplexMatrix m(2, {1.0, 0.0, 0.0, -1.0});
  return m;
}
const ComplexMatrix& sigma(std::size_t k) {
  switch (k) {
    case 0: return x();
    case 1: return y();
    case 2: return z();
    default: throw std::out_of_range("Pauli index must be 0, 1 or 2");
  }
}
}  // namespace pauli

ComplexMatrix kron(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
  if (lhs.dim() != 2 || rhs.dim() != 2) {
    throw std::invalid_argument("kron expects two 2x2 factors");
  }
  ComplexMatrix out(4);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      for (std::size_t k = 0; k < 2; ++k) {
        for (std::size_t l = 0; l < 2; ++l) out(2 * i + k, 2 * j + l) = lhs(i, j) * rhs(k, l);
      }
    }
  }
  return out;
}

EigenResult hermitian_eig(const ComplexMatrix& m) {
  if (!m.is_hermitian(kTol.hermitian_input)) {
    throw std::invalid_argument("hermitian_eig: input is not Hermitian (max |M - M^dagger| = " +
                                std::to_string(max_abs_diff(m, m.adjoint())) + ")");
  }
  const std::size_t n = m.dim();
  Work w{n};
  // Symmetrize so tiny anti-Hermitian residue does not bias the rotations.
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) w(r, c) = 0.5 * (m(r, c) + std::conj(m(c, r)));
  }
  RawEigen raw = jacobi(w);
  EigenResult out{std::move(raw.values), ComplexMatrix(n)};
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) out.vectors(r, c) = raw.vectors(r, c);
  }
  return out;
}

double min_eigenvalue(const ComplexMatrix& m) { return hermitian_eig(m).values.back(); }

ComplexMatrix reduce(const ComplexMatrix& m, Qubit traced_out) {
  if (m.dim() != 4) throw std::invalid_argument("partial trace expects a 4x4 matrix");
  ComplexMatrix out(2);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      for (std::size_t k = 0; k < 2; ++k) {
        if (traced_out == Qubit::second) {
          out(i, j) += m(2 * i + k, 2 * j + k);
        } else {
          out(i, j) += m(2 * k + i, 2 * k + j);
        }
      }
    }
  }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& rho, Qubit traced_out) {
  if (rho.dim() != 4) throw std::invalid_argument("partial trace expects a 4x4 matrix");
  if (!is_density_matrix(rho)) {
    throw std::invalid_argument("partial_trace: input is not a density matrix");
  }
  return reduce(rho, traced_out);
}

ComplexMatrix partial_transpose(const ComplexMatrix& m, Qubit transposed) {
  if (m.dim() != 4) throw std::invalid_argument("partial transpose expects a 4x4 matrix");
  ComplexMatrix out(4);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t k = 0; k < 2; ++k) {
      for (std::size_t j = 0; j < 2; ++j) {
        for (std::size_t l = 0; l < 2; ++l) {
          // element <ik| m |jl>
          const Complex value = m(2 * i + k, 2 * j + l);
          if (transposed == Qubit::second) {
            out(2 * i + l, 2 * j + k) = value;
          } else {
            out(2 * j + k, 2 * i + l) = value;
          }
        }
      }
    }
  }
  return out;
}

bool is_density_matrix(const ComplexMatrix& m) {
  if (!m.is_hermitian(kTol.hermitian)) return false;
  if (std::abs(m.trace() - 1.0) > kTol.trace) return false;
  return min_eigenvalue(m) >= kTol.psd;
}

Mat3 Mat3::identity() { return diagonal(1.0, 1.0, 1.0); }

Mat3 Mat3::diagonal(double d0, double d1, double d2) {
  Mat3 m;
  m(0, 0) = d0;
  m(1, 1) = d1;
  m(2, 2) = d2;
  return m;
}

Mat3 Mat3::outer(const Vec3& u, const Vec3& v) {
  Mat3 m;
  for (std::size_t r = 0; r < 3; ++r) {
    for (std::size_t c = 0; c < 3; ++c) m(r, c) = u[r] * v[c];
  }
  return m;
}

Mat3 Mat3::transpose() const {
  Mat3 m;
  for (std::size_t r = 0; r < 3; ++r) {
    for (std::size_t c = 0; c < 3; ++c) m(c, r) = (*this)(r, c);
  }
  return m;
}

double Mat3::determinant() const {
  const Mat3& m = *this;
  return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
         m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
         m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

Mat3 operator*(const Mat3& lhs, const Mat3& rhs) {
  Mat3 out;
  for (std::size_t r = 0; r < 3; ++r) {
    for (std::size_t c = 0; c < 3; ++c) {
      double sum = 0.0;
      for (std::size_t k = 0; k < 3; ++k) sum += lhs(r, k) * rhs(k, c);
      out(r, c) = sum;
    }
  }
  return out;
}

Vec3 operator*(const Mat3& lhs, const Vec3& rhs) {
  Vec3 out{};
  for (std::size_t r = 0; r < 3; ++r) {
    for (std::size_t k = 0; k < 3; ++k) out[r] += lhs(r, k) * rhs[k];
  }
  return out;
}

Mat3 operator+(const Mat3& lhs, const Mat3& rhs) {
  Mat3 out;
  for (std::size_t i = 0; i < 9; ++i) out.data[i] = lhs.data[i] + rhs.data[i];
  return out;
}

Mat3 operator-(const Mat3& lhs, const Mat3& rhs) {
  Mat3 out;
  for (std::size_t i = 0; i < 9; ++i) out.data[i] = lhs.data[i] - rhs.data[i];
  return out;
}

Mat3 operator*(double scale, const Mat3& rhs) {
  Mat3 out;
  for (std::size_t i = 0; i < 9; ++i) out.data[i] = scale * rhs.data[i];
  return out;
}

double dot(const Vec3& u, const Vec3& v) { return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]; }
double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }
Vec3 operator+(const Vec3& u, const Vec3& v) { return {u[0] + v[0], u[1] + v[1], u[2] + v[2]}; }
Vec3 operator-(const Vec3& u, const Vec3& v) { return {u[0] - v[0], u[1] - v[1], u[2] - v[2]}; }
Vec3 operator*(double scale, const Vec3& v) { return {scale * v[0], scale * v[1], scale * v[2]}; }

SymmetricEigen3 symmetric_eig(const Mat3& m) {
  Work w{3};
  for (std::size_t r = 0; r < 3; ++r) {
    for (std::size_t c = 0; c < 3; ++c) {
      if (std::abs(m(r, c) - m(c, r)) > kTol.hermitian_input) {
        throw std::invalid_argument("symmetric_eig: input is not symmetric");
      }
      w(r, c) = 0.5 * (m(r, c) + m(c, r));
    }
  }
  // Real input keeps every rotation real, so the imaginary parts stay zero.
  RawEigen raw = jacobi(w);
  SymmetricEigen3 out;
  for (std::size_t k = 0; k < 3; ++k) {
    out.values[k] = raw.values[k];
    for (std::size_t r = 0; r < 3; ++r) out.vectors(r, k) = raw.vectors(r, k).real();
  }
  return out;
}

}  // namespace uqi
