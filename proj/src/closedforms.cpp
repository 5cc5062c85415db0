#include "randstate/closedforms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "randstate/errors.hpp"
#include "randstate/functionals.hpp"

namespace rstate {

namespace {

void require_pair(std::size_t m, std::size_t n) {
  if (m < 1) throw ParameterError("requires m >= 1");
  if (m > n) throw ParameterError("requires m <= n");
}

void require_k(std::size_t k) {
  if (k < 1) throw ParameterError("requires k >= 1");
}

void require_m2_n(std::size_t n) {
  if (n < 2) throw ParameterError("m = 2 eigenvalue density requires n >= 2");
}

}  // namespace

double avg_entropy_page(std::size_t m, std::size_t n) {
  require_pair(m, n);
  const long double diff = harmonic_extended(m * n) - harmonic_extended(n);
  return static_cast<double>(diff - static_cast<long double>(m - 1) / (2.0L * n));
}

double avg_diag_entropy(std::size_t m, std::size_t n, std::size_t k) {
  require_pair(m, n);
  require_k(k);
  return static_cast<double>(harmonic_extended(m * k * n) - harmonic_extended(k * n));
}

double avg_coherence(std::size_t m, std::size_t n, std::size_t k) {
  require_pair(m, n);
  require_k(k);
  return static_cast<double>(static_cast<long double>(m - 1) / (2.0L * k * n));
}

double avg_subentropy(std::size_t m, std::size_t n) {
  require_pair(m, n);
  return static_cast<double>(1.0L + harmonic_extended(m * n) - harmonic_extended(m) -
                             harmonic_extended(n));
}

double max_subentropy(std::size_t m) {
  if (m < 1) throw ParameterError("max_subentropy requires m >= 1");
  return static_cast<double>(1.0L + std::log(static_cast<long double>(m)) - harmonic_extended(m));
}

double isospectral_avg_diag_entropy(const Spectrum& lambda) {
  if (lambda.size() == 0) throw ParameterError("isospectral average requires a non-empty spectrum");
  return static_cast<double>(harmonic_extended(lambda.size()) - 1.0L +
                             static_cast<long double>(subentropy(lambda)));
}

double concentration_bound(std::size_t m, std::size_t n, double epsilon) {
  if (m < 3) throw ParameterError("concentration bound holds only for m >= 3");
  if (n < m) throw ParameterError("requires m <= n");
  if (!(epsilon > 0.0)) throw ParameterError("concentration bound requires epsilon > 0");
  const double pi = std::numbers::pi;
  const double log_m = std::log(static_cast<double>(m));
  const double denom = 144.0 * pi * pi * pi * std::numbers::ln2 * log_m * log_m;
  const double bound = 2.0 * std::exp(-static_cast<double>(m * n) * epsilon * epsilon / denom);
  return std::min(1.0, bound);
}

double eigen_density_m2(std::size_t n, double x) {
  require_m2_n(n);
  if (!(x > 0.0 && x < 1.0)) return 0.0;
  // Normalizer: integral of (1 - 4x(1-x)) (x(1-x))^(n-2) = B(n-1, n-1) - 4 B(n, n).
  const double a = static_cast<double>(n);
  const double beta_lo = std::exp(2.0 * std::lgamma(a - 1.0) - std::lgamma(2.0 * a - 2.0));
  const double beta_hi = std::exp(2.0 * std::lgamma(a) - std::lgamma(2.0 * a));
  const double norm = beta_lo - 4.0 * beta_hi;
  const double v = 2.0 * x - 1.0;
  return v * v * std::pow(x * (1.0 - x), a - 2.0) / norm;
}

double derivative_principle_density_m2(std::size_t n, double x) {
  require_m2_n(n);
  if (!(x > 0.0 && x < 1.0)) return 0.0;
  const double a = static_cast<double>(n);
  const double dirichlet_norm = std::exp(std::lgamma(2.0 * a) - 2.0 * std::lgamma(a));
  // d/dx of (x(1-x))^(n-1).
  const double dp = dirichlet_norm * (a - 1.0) * std::pow(x * (1.0 - x), a - 2.0) * (1.0 - 2.0 * x);
  // Vandermonde lambda_2 - lambda_1 with lambda_2 = 1 - x; prefactor 1 / (1! 2!).
  const double vandermonde = (1.0 - x) - x;
  return 0.5 * vandermonde * dp;
}

}  // namespace rstate
