#include "randstate/functionals.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>

#include "randstate/closedforms.hpp"
#include "randstate/errors.hpp"
#include "test_support.hpp"

using namespace rstate;
using rstate::testing::random_probability_vector;

namespace {

// Literal quotient formula; only trustworthy for well-separated positive nodes.
double subentropy_literal(const std::vector<double>& l) {
  const std::size_t m = l.size();
  long double q = 0.0L;
  for (std::size_t i = 0; i < m; ++i) {
    if (l[i] == 0.0) continue;
    long double denom = 1.0L;
    for (std::size_t j = 0; j < m; ++j)
      if (j != i) denom *= static_cast<long double>(l[i]) - l[j];
    q -= std::pow(static_cast<long double>(l[i]), static_cast<long double>(m)) * std::log((long double)l[i]) / denom;
  }
  return static_cast<double>(q);
}

DensityMatrix state_with_spectrum(RngStream& rng, const std::vector<double>& lam) {
  const auto u = haar_unitary(rng, lam.size());
  return DensityMatrix::from_positive(HermitianMatrix(u * rstate::testing::diagonal_matrix(lam) * u.adjoint()));
}

std::vector<double> renormalized(std::vector<double> p) {
  double t = 0.0;
  for (double x : p) t += x;
  for (auto& x : p) x /= t;
  return p;
}

}  // namespace

TEST(harmonic, small_values) {
  EXPECT_EQ(harmonic(1), 1.0);
  EXPECT_NEAR(harmonic(4), 25.0 / 12.0, 1e-15);
  EXPECT_THROW(harmonic(0), ParameterError);
}

TEST(harmonic, euler_gamma_limit) {
  EXPECT_NEAR(harmonic(1000000) - std::log(1e6), 0.5772156649015329, 1e-6);
}

TEST(harmonic, table_and_asymptotic_agree_at_the_limit) {
  const std::size_t k = HarmonicTable::kTableLimit;
  const long double below = harmonic_extended(k - 1);
  const long double at = harmonic_extended(k);
  EXPECT_NEAR(static_cast<double>(at - below), 1.0 / static_cast<double>(k), 1e-17);
  // Extended-precision oracle from an independent evaluation.
  EXPECT_NEAR(static_cast<double>(harmonic_extended(1000000)), 14.392726722865723631, 1e-14);
}

TEST(harmonic, concurrent_growth) {
  HarmonicTable table;
  std::vector<std::jthread> threads;
  std::vector<long double> results(8);
  for (int t = 0; t < 8; ++t)
    threads.emplace_back([&, t] { results[t] = table(1000 + 5000 * t); });
  threads.clear();
  for (int t = 0; t < 8; ++t) EXPECT_EQ(results[t], table(1000 + 5000 * t));
}

TEST(shannon, examples) {
  EXPECT_EQ(shannon_entropy(std::vector<double>{1.0, 0.0}), 0.0);
  EXPECT_NEAR(shannon_entropy(std::vector<double>{0.5, 0.5}), std::numbers::ln2, 1e-15);
  EXPECT_NEAR(shannon_entropy(std::vector<double>{0.7, 0.2, 0.1}), 0.801818552543337, 1e-14);
  EXPECT_NEAR(shannon_entropy(std::vector<double>{0.1, 0.7, 0.2}), 0.801818552543337, 1e-14);
}

TEST(shannon, domain_errors) {
  EXPECT_THROW(shannon_entropy(std::vector<double>{1.1, -0.1}), DomainError);
  EXPECT_THROW(shannon_entropy(std::vector<double>{0.5, 0.4}), DomainError);
  EXPECT_THROW(shannon_entropy(std::vector<double>{}), DomainError);
  EXPECT_NO_THROW(shannon_entropy(std::vector<double>{1.0, -1e-13}));
}

TEST(shannon, compensated_path_matches_log_m) {
  for (std::size_t m : {33u, 100u, 1000u}) {
    std::vector<double> p(m, 1.0 / static_cast<double>(m));
    EXPECT_NEAR(shannon_entropy(p), std::log(static_cast<double>(m)), 1e-13) << m;
  }
}

TEST(von_neumann, examples) {
  RngStream rng(SeedSpec{61, 0});
  EXPECT_NEAR(von_neumann_entropy(state_with_spectrum(rng, {1.0 / 3, 1.0 / 3, 1.0 / 3})), std::log(3.0), 1e-12);
  EXPECT_NEAR(von_neumann_entropy(state_with_spectrum(rng, {1.0, 0.0, 0.0, 0.0})), 0.0, 1e-9);
  for (int i = 0; i < 10; ++i)
    EXPECT_NEAR(von_neumann_entropy(state_with_spectrum(rng, {0.7, 0.2, 0.1})), 0.801818552543337, 1e-9);
}

TEST(coherence, examples) {
  RngStream rng(SeedSpec{62, 0});
  const auto diagonal = DensityMatrix::from_positive(HermitianMatrix(rstate::testing::diagonal_matrix({0.5, 0.3, 0.2})));
  EXPECT_EQ(relative_entropy_of_coherence(diagonal), 0.0);

  const ComplexMatrix plus(2, 2, {0.5, 0.5, 0.5, 0.5});
  EXPECT_NEAR(relative_entropy_of_coherence(DensityMatrix::from_positive(HermitianMatrix(plus))), std::numbers::ln2,
              1e-12);

  EXPECT_NEAR(relative_entropy_of_coherence(state_with_spectrum(rng, {0.25, 0.25, 0.25, 0.25})), 0.0, 1e-12);
}

TEST(coherence, nonnegative_and_zero_iff_diagonal) {
  RngStream rng(SeedSpec{63, 0});
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t m = 2 + trial % 4;
    const auto p = random_probability_vector(rng, m);
    const auto diag = DensityMatrix::from_positive(HermitianMatrix(rstate::testing::diagonal_matrix(p)));
    EXPECT_LE(relative_entropy_of_coherence(diag), 1e-9);
    const auto rho = sample_mixing_state(rng, EnsembleSpec{m, m, 1});
    const double c = relative_entropy_of_coherence(rho);
    EXPECT_GE(c, 0.0);
    // Generic states have off-diagonal mass, hence strictly positive coherence.
    EXPECT_GT(c, 1e-9);
  }
}

TEST(subentropy, derivative_formula_matches_finite_differences) {
  // Central differences of g(x) = x^4 ln x at x = 0.3, orders 1-3, with one
  // Richardson step (h, h/2) to remove the O(h^2) truncation term.
  const std::size_t m = 4;
  const long double x = 0.3L;
  auto g = [](long double t) { return t * t * t * t * std::log(t); };
  auto d1 = [&](long double h) { return (g(x + h) - g(x - h)) / (2 * h); };
  auto d2 = [&](long double h) { return (g(x + h) - 2 * g(x) + g(x - h)) / (h * h); };
  auto d3 = [&](long double h) {
    return (g(x + 2 * h) - 2 * g(x + h) + 2 * g(x - h) - g(x - 2 * h)) / (2 * h * h * h);
  };
  auto richardson = [](auto&& d, long double h) { return (4 * d(h / 2) - d(h)) / 3; };
  const long double h = 1e-3L;
  // subentropy_kernel_taylor returns g^(r) / r!.
  EXPECT_NEAR(static_cast<double>(subentropy_kernel_taylor(m, 1, x)), static_cast<double>(richardson(d1, h)), 1e-6);
  EXPECT_NEAR(static_cast<double>(2 * subentropy_kernel_taylor(m, 2, x)), static_cast<double>(richardson(d2, h)), 1e-6);
  EXPECT_NEAR(static_cast<double>(6 * subentropy_kernel_taylor(m, 3, x)), static_cast<double>(richardson(d3, h)), 1e-6);
  EXPECT_NEAR(static_cast<double>(subentropy_kernel_taylor(m, 0, x)), static_cast<double>(g(x)), 1e-16);
  EXPECT_EQ(subentropy_kernel_taylor(m, 2, 0.0L), 0.0L);
}

TEST(subentropy, examples) {
  EXPECT_EQ(subentropy(Spectrum(std::vector<double>{1.0})), 0.0);
  EXPECT_EQ(subentropy(Spectrum(std::vector<double>{1.0, 0.0, 0.0, 0.0})), 0.0);
  EXPECT_NEAR(subentropy(Spectrum(std::vector<double>{0.5, 0.5})), std::numbers::ln2 - 0.5, 1e-15);
  const double confluent = subentropy(Spectrum(std::vector<double>{0.5, 0.5}));
  EXPECT_NEAR(subentropy(Spectrum(std::vector<double>{0.5, 0.5 - 1e-9})), confluent, 1e-6);
  EXPECT_NEAR(subentropy(Spectrum(std::vector<double>{0.6, 0.3, 0.1})), 0.216826987206296, 1e-13);
}

TEST(subentropy, matches_literal_formula_on_separated_spectra) {
  RngStream rng(SeedSpec{64, 0});
  int checked = 0;
  for (int trial = 0; trial < 2000 && checked < 300; ++trial) {
    const std::size_t m = 2 + trial % 5;
    std::vector<double> p(m);
    for (auto& x : p) x = 0.05 + rng.uniform();
    p = renormalized(p);
    std::sort(p.begin(), p.end());
    double gap = 1.0;
    for (std::size_t i = 1; i < m; ++i) gap = std::min(gap, p[i] - p[i - 1]);
    if (gap < 1e-2) continue;
    ++checked;
    EXPECT_NEAR(subentropy(Spectrum(p)), subentropy_literal(p), 1e-10);
  }
  EXPECT_GT(checked, 100);
}

TEST(subentropy, uniform_attains_maximum) {
  for (std::size_t m = 1; m <= 16; ++m) {
    const Spectrum uniform(std::vector<double>(m, 1.0 / static_cast<double>(m)));
    const double expected = 1.0 + std::log(static_cast<double>(m)) - harmonic(m);
    EXPECT_NEAR(subentropy(uniform), expected, 1e-10) << m;
  }
}

TEST(subentropy, sandwich_between_zero_and_entropy) {
  RngStream rng(SeedSpec{65, 0});
  for (int trial = 0; trial < 10000; ++trial) {
    const std::size_t m = 1 + trial % 12;
    const Spectrum lam(random_probability_vector(rng, m));
    const double q = subentropy(lam);
    const double s = shannon_entropy(lam.values());
    ASSERT_GE(q, 0.0);
    ASSERT_LE(q, s + 1e-12) << "trial " << trial;
    ASSERT_LE(s, std::log(static_cast<double>(m)) + 1e-12);
    ASSERT_LE(q, max_subentropy(m) + 1e-12);
  }
}

TEST(subentropy, strictly_below_maximum_off_uniform) {
  RngStream rng(SeedSpec{66, 0});
  for (std::size_t m : {2u, 3u, 5u}) {
    double best = 0.0;
    for (int trial = 0; trial < 2000; ++trial) {
      std::vector<double> p(m);
      for (auto& x : p) x = 1.0 + 0.2 * (rng.uniform() - 0.5);
      const double q = subentropy(Spectrum(renormalized(p)));
      best = std::max(best, q);
    }
    EXPECT_LT(best, max_subentropy(m));
    EXPECT_GT(best, max_subentropy(m) - 0.01);
  }
}

TEST(subentropy, permutation_invariant) {
  std::vector<double> p{0.1, 0.5, 0.15, 0.25};
  const double reference = subentropy(Spectrum(p));
  std::sort(p.begin(), p.end());
  do {
    EXPECT_EQ(subentropy(Spectrum(p)), reference);
  } while (std::next_permutation(p.begin(), p.end()));
}

TEST(subentropy, confluent_consistency_under_perturbation) {
  RngStream rng(SeedSpec{67, 0});
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t m = 2 + trial % 10;
    auto p = random_probability_vector(rng, m);
    const double base = subentropy(Spectrum(p));
    auto q = p;
    q[trial % m] += 1e-9;
    EXPECT_NEAR(subentropy(Spectrum(renormalized(q))), base, 1e-6) << trial;
  }
}

TEST(subentropy, degenerate_clusters) {
  // Two-fold and three-fold degeneracies near generic positions.
  for (const auto& p : std::vector<std::vector<double>>{{0.4, 0.4, 0.2}, {0.3, 0.3, 0.3, 0.1}, {0.45, 0.45, 0.1, 0.0}}) {
    auto jittered = p;
    jittered[0] += 3e-6;
    jittered[1] -= 3e-6;
    EXPECT_NEAR(subentropy(Spectrum(p)), subentropy(Spectrum(jittered)), 1e-6);
  }
}
