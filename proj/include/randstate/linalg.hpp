#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "randstate/randkit.hpp"

namespace rstate {

using Complex = std::complex<double>;

/// Dense row-major complex matrix.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  /// Throws ParameterError if entries.size() != rows * cols.
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

  static ComplexMatrix identity(std::size_t dim);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Complex& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  std::span<const Complex> entries() const noexcept { return entries_; }
  std::span<const Complex> row(std::size_t r) const { return {entries_.data() + r * cols_, cols_}; }

  ComplexMatrix adjoint() const;
  double frobenius_norm() const;

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> entries_;
};

/// Square matrix with entry(i,j) == conj(entry(j,i)) exactly. Construction
/// from an arbitrary square matrix stores (A + A^dagger) / 2.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(const ComplexMatrix& a);

  std::size_t dim() const noexcept { return matrix_.rows(); }
  const Complex& operator()(std::size_t r, std::size_t c) const { return matrix_(r, c); }
  const ComplexMatrix& matrix() const noexcept { return matrix_; }

  /// Real diagonal entries.
  std::vector<double> diagonal() const;
  double trace() const;

  /// Every entry divided by `divisor`.
  HermitianMatrix divided_by(double divisor) const;

 private:
  ComplexMatrix matrix_;
};

/// Real eigenvalues in descending order.
class Spectrum {
 public:
  Spectrum() = default;
  /// Sorts the values into descending order.
  explicit Spectrum(std::vector<double> values);

  /// Validates a density-matrix spectrum: entries in [-1e-12, 0) are clamped
  /// to zero, anything more negative or a sum further than 1e-10 from one
  /// throws DomainError.
  static Spectrum probability(std::vector<double> values);

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  std::span<const double> values() const& noexcept { return values_; }
  std::span<const double> values() const&& = delete;

 private:
  std::vector<double> values_;
};

/// Z Z^dagger.
HermitianMatrix gram(const ComplexMatrix& z);

struct JacobiOptions {
  double relative_tolerance = 1e-13;
  int max_sweeps = 40;
};

/// All eigenvalues of a Hermitian matrix by cyclic complex Jacobi rotations.
/// Iterates until the off-diagonal Frobenius mass drops below
/// relative_tolerance * ||A||_F; throws NumericalError (carrying that mass)
/// when max_sweeps is exhausted first.
Spectrum hermitian_eigenvalues(const HermitianMatrix& a, const JacobiOptions& options = {});

/// Haar-distributed m x m unitary: QR of a square Ginibre matrix by modified
/// Gram-Schmidt (with one reorthogonalization pass), then column j of Q is
/// multiplied by the phase r_jj / |r_jj|.
ComplexMatrix haar_unitary(RngStream& stream, std::size_t m);

/// Diagonal of U diag(lambda) U^dagger, d_i = sum_j |U_ij|^2 lambda_j, without
/// forming the product. Throws ParameterError on dimension mismatch.
std::vector<double> unitary_conjugate_diagonal(const ComplexMatrix& u, const Spectrum& lambda);

}  // namespace rstate
