#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace amgate {

/// Dense row-major real matrix. Sizes here stay in the low hundreds.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const double> diag);
  static Matrix column(std::span<const double> v);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  std::vector<double> col(std::size_t j) const;

  Matrix transposed() const;
  /// (M + M^T) / 2; requires a square matrix.
  Matrix symmetrized() const;

  std::span<const double> data() const { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator*(const Matrix& lhs, const Matrix& rhs);
Matrix operator-(const Matrix& lhs, const Matrix& rhs);
std::vector<double> operator*(const Matrix& m, std::span<const double> v);

double max_abs(const Matrix& m);
double dot(std::span<const double> x, std::span<const double> y);
double norm2(std::span<const double> x);
/// x^T M y
double quadratic_form(const Matrix& m, std::span<const double> x, std::span<const double> y);
inline double quadratic_form(const Matrix& m, std::span<const double> x) { return quadratic_form(m, x, x); }

/// Eigenpairs of a real symmetric matrix, eigenvalues ascending, eigenvectors stored as columns.
struct SymmetricEigen {
  std::vector<double> values;
  Matrix vectors;
  int sweeps = 0;
};

/// Cyclic Jacobi rotations with the usual threshold strategy for the first sweeps.
/// Throws NumericalError if off-diagonal mass does not vanish within max_sweeps.
SymmetricEigen jacobi_eigen(const Matrix& symmetric, int max_sweeps = 100);

/// Householder QR of a tall (rows >= cols) matrix. q is rows x rows orthogonal; r is rows x cols.
struct QRDecomposition {
  Matrix q;
  Matrix r;
};
QRDecomposition householder_qr(const Matrix& a);

}  // namespace amgate
