#include "randstate/ensembles.hpp"

#include <cmath>
#include <string>

#include "randstate/errors.hpp"

namespace rstate {

void EnsembleSpec::validate() const {
  if (m < 1) throw ParameterError("ensemble requires m >= 1");
  if (m > n) throw ParameterError("ensemble requires m <= n");
  if (k < 1) throw ParameterError("ensemble requires k >= 1");
}

DensityMatrix DensityMatrix::from_positive(const HermitianMatrix& w) {
  const double t = w.trace();
  if (!(t > 0.0)) throw NumericalError("density matrix: trace is not positive", t);
  HermitianMatrix rho = w.divided_by(t);
  std::vector<double> diag = rho.diagonal();
  Spectrum raw = hermitian_eigenvalues(rho);
  std::vector<double> values(raw.values().begin(), raw.values().end());
  for (auto& v : values) {
    if (v < -1e-12) throw NumericalError("density matrix: negative eigenvalue", v);
    if (v < 0.0) v = 0.0;
  }
  return DensityMatrix(std::move(rho), std::move(diag), Spectrum(std::move(values)));
}

ComplexMatrix sample_ginibre(RngStream& stream, std::size_t m, std::size_t n) {
  if (m < 1 || n < 1) throw ParameterError("sample_ginibre: dimensions must be positive");
  ComplexMatrix z(m, n);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c < n; ++c) z(r, c) = complex_standard_gaussian(stream);
  return z;
}

HermitianMatrix sample_wishart(RngStream& stream, std::size_t m, std::size_t n) {
  if (m > n) throw ParameterError("sample_wishart: requires m <= n");
  return gram(sample_ginibre(stream, m, n));
}

DensityMatrix sample_induced_state(RngStream& stream, const EnsembleSpec& spec) {
  if (spec.k != 1) throw ParameterError("sample_induced_state: k must be 1");
  return sample_mixing_state(stream, spec);
}

DensityMatrix sample_mixing_state(RngStream& stream, const EnsembleSpec& spec) {
  spec.validate();
  return DensityMatrix::from_positive(gram(sample_ginibre(stream, spec.m, spec.environment())));
}

std::vector<double> sample_diag_dirichlet(RngStream& stream, const EnsembleSpec& spec) {
  spec.validate();
  return sample_symmetric_dirichlet(stream, spec.m, static_cast<double>(spec.environment()));
}

std::vector<double> sample_isospectral_diagonal(RngStream& stream, const Spectrum& lambda) {
  return unitary_conjugate_diagonal(haar_unitary(stream, lambda.size()), lambda);
}

}  // namespace rstate
