#pragma once

#include <cstddef>

#include "randstate/linalg.hpp"

namespace rstate {

// Exact averages over the induced ensembles. Every (m, n) function requires
// 1 <= m <= n and throws ParameterError otherwise; k-dependent averages use
// the ensemble E_k, which is the (m, k n) induced ensemble.

/// Mean von Neumann entropy: H_mn - H_n - (m-1)/(2n).
double avg_entropy_page(std::size_t m, std::size_t n);

/// Mean diagonal entropy of E_k: H_{mkn} - H_{kn}.
double avg_diag_entropy(std::size_t m, std::size_t n, std::size_t k = 1);

/// Mean relative entropy of coherence of E_k: (m-1)/(2kn).
double avg_coherence(std::size_t m, std::size_t n, std::size_t k = 1);

/// Mean subentropy: 1 + H_mn - H_m - H_n.
double avg_subentropy(std::size_t m, std::size_t n);

/// Subentropy of the maximally mixed state: 1 + ln m - H_m.
double max_subentropy(std::size_t m);

/// Haar average of S((U diag(lambda) U^dagger)_diag) at a fixed spectrum:
/// H_m - 1 + Q(lambda).
double isospectral_avg_diag_entropy(const Spectrum& lambda);

/// Tail bound P{|C - (m-1)/2n| > eps} <= 2 exp(-m n eps^2 / (144 pi^3 ln2 (ln m)^2)),
/// clamped to 1. Requires m >= 3, n >= m, eps > 0.
double concentration_bound(std::size_t m, std::size_t n, double epsilon);

/// Joint eigenvalue density of the (2, n) induced ensemble as a density in
/// x = lambda_1 on (0, 1): c (2x-1)^2 (x(1-x))^(n-2), c from Beta functions.
/// Zero outside (0, 1). Requires n >= 2.
double eigen_density_m2(std::size_t n, double x);

/// The same density reconstructed from the Dirichlet law of the diagonal,
/// p(x) = Gamma(2n)/Gamma(n)^2 (x(1-x))^(n-1), by the derivative principle
/// (1/2!) Delta(lambda) Delta(-d/dlambda) p restricted to lambda_2 = 1 - x,
/// i.e. (1/2)(1-2x) p'(x). Requires n >= 2.
double derivative_principle_density_m2(std::size_t n, double x);

}  // namespace rstate
