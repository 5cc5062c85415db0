#pragma once

#include <cstddef>
#include <vector>

#include "randstate/linalg.hpp"
#include "randstate/randkit.hpp"

namespace rstate {

/// Parameters of the induced / mixing ensemble E_k on C^m (x) C^n:
/// states are trace-normalized grams of an m x (k n) Ginibre block.
struct EnsembleSpec {
  std::size_t m = 1;
  std::size_t n = 1;
  std::size_t k = 1;

  /// Throws ParameterError unless 1 <= m <= n and k >= 1.
  void validate() const;
  /// Width k * n of the Ginibre block.
  std::size_t environment() const noexcept { return k * n; }
};

/// A sampled quantum state together with its diagonal and spectrum, both
/// computed once at construction.
class DensityMatrix {
 public:
  /// Normalizes a PSD Hermitian matrix by its trace. Eigenvalues in
  /// [-1e-12, 0) are clamped to zero; more negative ones throw NumericalError.
  static DensityMatrix from_positive(const HermitianMatrix& w);

  std::size_t dim() const noexcept { return matrix_.dim(); }
  const HermitianMatrix& matrix() const noexcept { return matrix_; }
  const std::vector<double>& diagonal() const noexcept { return diagonal_; }
  const Spectrum& spectrum() const noexcept { return spectrum_; }

 private:
  DensityMatrix(HermitianMatrix matrix, std::vector<double> diagonal, Spectrum spectrum)
      : matrix_(std::move(matrix)), diagonal_(std::move(diagonal)), spectrum_(std::move(spectrum)) {}

  HermitianMatrix matrix_;
  std::vector<double> diagonal_;
  Spectrum spectrum_;
};

/// m x n matrix of i.i.d. complex standard Gaussians, filled row by row.
ComplexMatrix sample_ginibre(RngStream& stream, std::size_t m, std::size_t n);

/// gram(sample_ginibre(m, n)); requires m <= n.
HermitianMatrix sample_wishart(RngStream& stream, std::size_t m, std::size_t n);

/// W / Tr W for a Wishart W; spec.k must be 1.
DensityMatrix sample_induced_state(RngStream& stream, const EnsembleSpec& spec);

/// Gram of an m x (k n) Ginibre block, trace-normalized (ensemble E_k). With
/// k == 1 this consumes the stream exactly as sample_induced_state does.
DensityMatrix sample_mixing_state(RngStream& stream, const EnsembleSpec& spec);

/// Diagonal marginal of E_k drawn directly: Dirichlet(k n, ..., k n).
std::vector<double> sample_diag_dirichlet(RngStream& stream, const EnsembleSpec& spec);

/// Diagonal of U diag(lambda) U^dagger for a fresh Haar unitary U.
std::vector<double> sample_isospectral_diagonal(RngStream& stream, const Spectrum& lambda);

}  // namespace rstate
