#include "randstate/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "randstate/errors.hpp"

namespace rstate {

namespace {

constexpr int kMaxIterations = 10000;
constexpr double kEpsilon = 1e-16;

double lower_gamma_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  for (int i = 1; i < kMaxIterations; ++i) {
    term *= x / (a + i);
    sum += term;
    if (std::abs(term) < std::abs(sum) * kEpsilon) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double upper_gamma_fraction(double a, double x) {
  constexpr double tiny = std::numeric_limits<double>::min() / kEpsilon;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIterations; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kEpsilon) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

// Inverse of the limiting Kolmogorov CDF by bisection.
double kolmogorov_quantile(double p) {
  double lo = 0.2, hi = 4.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (kolmogorov_cdf(mid) < p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double regularized_lower_gamma(double a, double x) {
  if (!(a > 0.0)) throw ParameterError("incomplete gamma requires a > 0");
  if (x <= 0.0) return 0.0;
  if (x < a + 1.0) return lower_gamma_series(a, x);
  return 1.0 - upper_gamma_fraction(a, x);
}

double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) throw ParameterError("ks_statistic: no samples");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max({d, (i + 1) / n - f, f - i / n});
  }
  return d;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw ParameterError("ks_two_sample: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(i / na - j / nb));
  }
  return d;
}

double kolmogorov_cdf(double t) {
  if (t <= 0.0) return 0.0;
  if (t < 1.0) {
    // Theta-function form, fast for small t.
    const double pi = 3.14159265358979323846;
    const double q = std::exp(-pi * pi / (8.0 * t * t));
    double sum = 0.0;
    for (int k = 1; k < 200; k += 2) {
      const double term = std::pow(q, k * k);
      sum += term;
      if (term < 1e-18) break;
    }
    return std::sqrt(2.0 * pi) / t * sum;
  }
  double sum = 0.0;
  for (int k = 1; k < 200; ++k) {
    const double term = std::exp(-2.0 * k * k * t * t);
    sum += (k % 2 == 1 ? term : -term);
    if (term < 1e-18) break;
  }
  return 1.0 - 2.0 * sum;
}

double ks_critical_value(double alpha, std::size_t n) {
  if (!(alpha > 0.0 && alpha < 1.0) || n == 0) throw ParameterError("ks_critical_value: bad arguments");
  const double root = std::sqrt(static_cast<double>(n));
  return kolmogorov_quantile(1.0 - alpha) / (root + 0.12 + 0.11 / root);
}

double ks_two_sample_critical_value(double alpha, std::size_t n1, std::size_t n2) {
  if (!(alpha > 0.0 && alpha < 1.0) || n1 == 0 || n2 == 0) {
    throw ParameterError("ks_two_sample_critical_value: bad arguments");
  }
  const double a = static_cast<double>(n1), b = static_cast<double>(n2);
  return kolmogorov_quantile(1.0 - alpha) * std::sqrt((a + b) / (a * b));
}

}  // namespace rstate
