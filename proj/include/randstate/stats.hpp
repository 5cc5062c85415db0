#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace rstate {

/// Regularized lower incomplete gamma P(a, x): power series for x < a + 1,
/// Lentz continued fraction for Q = 1 - P otherwise. Throws ParameterError for
/// a <= 0. Returns 0 for x <= 0.
double regularized_lower_gamma(double a, double x);

/// CDF of Gamma(shape, 1).
inline double gamma_cdf(double shape, double x) { return regularized_lower_gamma(shape, x); }

/// One-sample Kolmogorov-Smirnov statistic sup |F_n - F|. Takes the samples
/// by value and sorts them.
double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf);

/// Two-sample Kolmogorov-Smirnov statistic.
double ks_two_sample(std::vector<double> a, std::vector<double> b);

/// Limiting Kolmogorov distribution P(sqrt(n) D_n <= t).
double kolmogorov_cdf(double t);

/// Critical value of the one-sample statistic at significance alpha for
/// sample size n, using the asymptotic quantile with Stephens' finite-n
/// correction k_alpha / (sqrt(n) + 0.12 + 0.11 / sqrt(n)).
double ks_critical_value(double alpha, std::size_t n);

/// Critical value of the two-sample statistic: k_alpha sqrt((n1 + n2) / (n1 n2)).
double ks_two_sample_critical_value(double alpha, std::size_t n1, std::size_t n2);

}  // namespace rstate
