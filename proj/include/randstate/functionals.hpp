#pragma once

#include <cstddef>
#include <shared_mutex>
#include <span>
#include <vector>

#include "randstate/ensembles.hpp"
#include "randstate/linalg.hpp"

namespace rstate {

/// Euler-Mascheroni constant.
inline constexpr long double kEulerGamma = 0.577215664901532860606512090082402431L;

/// Harmonic numbers H_k = sum_{j<=k} 1/j, accumulated in long double and
/// cached. The table grows on demand up to kTableLimit entries; larger k use
/// the Euler-Maclaurin expansion, which at that size is exact to long double
/// rounding. Safe for concurrent use.
class HarmonicTable {
 public:
  static constexpr std::size_t kTableLimit = std::size_t{1} << 21;

  /// Throws ParameterError for k == 0.
  long double operator()(std::size_t k);

  std::size_t cached_size() const;

 private:
  mutable std::shared_mutex mutex_;
  std::vector<long double> values_{0.0L};  // values_[k] = H_k, H_0 = 0
  long double carry_ = 0.0L;
};

/// H_k in extended precision from the process-wide table.
long double harmonic_extended(std::size_t k);
/// H_k; throws ParameterError for k == 0.
double harmonic(std::size_t k);

/// Shannon entropy in nats with 0 ln 0 = 0. Entries in [-1e-12, 0) count as
/// zero; more negative entries, or a sum further than 1e-8 from one, throw
/// DomainError.
double shannon_entropy(std::span<const double> p);

double von_neumann_entropy(const DensityMatrix& rho);

/// S(rho_diag) - S(rho). Round-off below zero (down to -1e-9) is clamped.
double relative_entropy_of_coherence(const DensityMatrix& rho);

/// Subentropy Q(lambda) = -sum_i lambda_i^m ln lambda_i / prod_{j!=i}(lambda_i - lambda_j),
/// evaluated as minus the (m-1)-th divided difference of x^m ln x over the
/// eigenvalues. Nodes closer than kSubentropyClusterGap are merged to their
/// mean and treated as repeated (confluent) nodes.
double subentropy(const Spectrum& lambda);

inline constexpr double kSubentropyClusterGap = 1e-7;
inline constexpr double kSubentropyZeroNode = 1e-14;

/// r-th derivative of g(x) = x^m ln x divided by r!, for r < m:
/// C(m, r) x^(m-r) (ln x + H_m - H_{m-r}); zero at x = 0.
long double subentropy_kernel_taylor(std::size_t m, std::size_t r, long double x);

}  // namespace rstate
