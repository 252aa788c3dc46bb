#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace uqi {

using Complex = std::complex<double>;

enum class Qubit { first, second };

// Dense complex square matrix of dimension 2 (one qubit) or 4 (two qubits),
// stored row-major. Two-qubit indices follow |q1 q2>, qubit 1 major.
class ComplexMatrix {
 public:
  ComplexMatrix() : ComplexMatrix(2) {}
  explicit ComplexMatrix(std::size_t dim);
  ComplexMatrix(std::size_t dim, std::initializer_list<Complex> row_major);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix diagonal(std::initializer_list<double> values);

  std::size_t dim() const { return dim_; }
  Complex& operator()(std::size_t row, std::size_t col) { return data_[row * dim_ + col]; }
  const Complex& operator()(std::size_t row, std::size_t col) const {
    return data_[row * dim_ + col];
  }
  std::span<const Complex> entries() const { return {data_.data(), dim_ * dim_}; }

  ComplexMatrix adjoint() const;
  ComplexMatrix conjugate() const;
  ComplexMatrix transpose() const;
  Complex trace() const;
  bool is_hermitian(double tol) const;

  ComplexMatrix& operator+=(const ComplexMatrix& rhs);
  ComplexMatrix& operator-=(const ComplexMatrix& rhs);
  ComplexMatrix& operator*=(Complex scale);

  friend ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
  friend ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }
  friend ComplexMatrix operator*(ComplexMatrix lhs, Complex scale) { return lhs *= scale; }
  friend ComplexMatrix operator*(Complex scale, ComplexMatrix rhs) { return rhs *= scale; }
  friend ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);
  friend bool operator==(const ComplexMatrix& lhs, const ComplexMatrix& rhs);

 private:
  std::size_t dim_;
  std::array<Complex, 16> data_{};
};

// Largest elementwise modulus of lhs - rhs. Dimensions must agree.
double max_abs_diff(const ComplexMatrix& lhs, const ComplexMatrix& rhs);

namespace pauli {
const ComplexMatrix& identity();
const ComplexMatrix& x();
const ComplexMatrix& y();
const ComplexMatrix& z();
// sigma_1..sigma_3 by zero-based index.
const ComplexMatrix& sigma(std::size_t k);
}  // namespace pauli

ComplexMatrix kron(const ComplexMatrix& lhs, const ComplexMatrix& rhs);

struct EigenResult {
  std::vector<double> values;  // non-increasing
  ComplexMatrix vectors;       // column k pairs with values[k]
};

// Cyclic Jacobi diagonalization of a Hermitian matrix. Eigenvector phases are
// fixed so the first largest-magnitude component is real and positive.
EigenResult hermitian_eig(const ComplexMatrix& m);

double min_eigenvalue(const ComplexMatrix& m);

// Reduced matrix of the kept qubit; no density-matrix validation. Works on
// arbitrary operators, e.g. (M x I) rho.
ComplexMatrix reduce(const ComplexMatrix& m, Qubit traced_out);

// Reduced density matrix; the input must be a valid density matrix.
ComplexMatrix partial_trace(const ComplexMatrix& rho, Qubit traced_out);

ComplexMatrix partial_transpose(const ComplexMatrix& m, Qubit transposed);

bool is_density_matrix(const ComplexMatrix& m);

// Real 3-vectors and 3x3 matrices for Bloch-space geometry.
using Vec3 = std::array<double, 3>;

struct Mat3 {
  std::array<double, 9> data{};

  static Mat3 identity();
  static Mat3 diagonal(double d0, double d1, double d2);
  static Mat3 outer(const Vec3& u, const Vec3& v);

  double& operator()(std::size_t row, std::size_t col) { return data[row * 3 + col]; }
  double operator()(std::size_t row, std::size_t col) const { return data[row * 3 + col]; }

  Mat3 transpose() const;
  double determinant() const;
  Vec3 column(std::size_t col) const { return {data[col], data[3 + col], data[6 + col]}; }

  friend Mat3 operator*(const Mat3& lhs, const Mat3& rhs);
  friend Vec3 operator*(const Mat3& lhs, const Vec3& rhs);
  friend Mat3 operator+(const Mat3& lhs, const Mat3& rhs);
  friend Mat3 operator-(const Mat3& lhs, const Mat3& rhs);
  friend Mat3 operator*(double scale, const Mat3& rhs);
};

double dot(const Vec3& u, const Vec3& v);
double norm(const Vec3& v);
Vec3 operator+(const Vec3& u, const Vec3& v);
Vec3 operator-(const Vec3& u, const Vec3& v);
Vec3 operator*(double scale, const Vec3& v);

struct SymmetricEigen3 {
  Vec3 values;  // non-increasing
  Mat3 vectors; // columns, largest component of each positive
};

SymmetricEigen3 symmetric_eig(const Mat3& m);

}  // namespace uqi
