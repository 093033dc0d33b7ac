#pragma once

#include <cstddef>
#include <vector>

namespace irma::linalg {

using Vector = std::vector<double>;

// Dense real matrix, row-major.
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols, 0.0) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t i, std::size_t j) {
    return entries_[i * cols_ + j];
  }
  double operator()(std::size_t i, std::size_t j) const {
    return entries_[i * cols_ + j];
  }

  const std::vector<double>& entries() const { return entries_; }
  std::vector<double>& entries() { return entries_; }

  // Row i as a raw pointer; rows are contiguous.
  double* row(std::size_t i) { return entries_.data() + i * cols_; }
  const double* row(std::size_t i) const { return entries_.data() + i * cols_; }

  bool all_finite() const;
  double frobenius_norm() const;

 private:
  std::size_t rows_, cols_;
  std::vector<double> entries_;
};

// Eigenvalues sorted descending; eigenvectors are the columns of
// `eigenvectors`, in the same order, sign-fixed so that each vector's
// largest-magnitude component is non-negative.
struct SpectralDecomposition {
  std::vector<double> eigenvalues;
  Matrix eigenvectors;

  Vector eigenvector(std::size_t j) const;
};

// Symmetric eigendecomposition by cyclic Jacobi rotations. Sweeps until all
// off-diagonal magnitudes fall below 1e-12, capped at 100 sweeps.
// Throws NotSymmetric if the input is asymmetric beyond 1e-10, NoConvergence
// if the cap is hit with a residual off-diagonal above 1e-9.
SpectralDecomposition sym_eig(const Matrix& m);

Matrix matmul(const Matrix& a, const Matrix& b);
Matrix transpose(const Matrix& m);
Vector matvec(const Matrix& m, const Vector& x);

double dot(const Vector& a, const Vector& b);
double norm(const Vector& v);

// Returns m [I - sum_i v_i v_i^T] for unit-length directions v_i. The
// directions are expected to be mutually orthonormal, in which case the
// result annihilates every v_i and the operation is idempotent.
Matrix outer_deflation(const Matrix& m, const std::vector<Vector>& directions);

}  // namespace irma::linalg
