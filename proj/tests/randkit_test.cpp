#include "randstate/randkit.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "randstate/errors.hpp"
#include "randstate/stats.hpp"
#include "test_support.hpp"

using namespace rstate;
using rstate::testing::moments;

TEST(randkit, same_seed_same_sequence) {
  RngStream a(SeedSpec{42, 3});
  RngStream b(SeedSpec{42, 3});
  for (int i = 0; i < 1000; ++i) {
    ASSERT_EQ(a.next_u64(), b.next_u64());
    ASSERT_EQ(a.standard_normal(), b.standard_normal());
    ASSERT_EQ(sample_gamma(a, 2.5), sample_gamma(b, 2.5));
  }
}

TEST(randkit, stream_index_changes_sequence) {
  RngStream a(SeedSpec{42, 0});
  RngStream b(SeedSpec{42, 1});
  RngStream c(SeedSpec{43, 0});
  int equal_ab = 0, equal_ac = 0;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next_u64();
    equal_ab += x == b.next_u64();
    equal_ac += x == c.next_u64();
  }
  EXPECT_EQ(equal_ab, 0);
  EXPECT_EQ(equal_ac, 0);
}

TEST(randkit, neighbouring_streams_uncorrelated) {
  constexpr int kN = 100000;
  RngStream a(SeedSpec{7, 0});
  RngStream b(SeedSpec{7, 1});
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (int i = 0; i < kN; ++i) {
    const double x = a.standard_normal(), y = b.standard_normal();
    sxy += x * y;
    sxx += x * x;
    syy += y * y;
  }
  EXPECT_LT(std::abs(sxy / std::sqrt(sxx * syy)), 0.01);
}

TEST(randkit, uniform_in_open_interval) {
  RngStream rng(SeedSpec{1, 0});
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(randkit, standard_normal_moments) {
  constexpr int kN = 1000000;
  RngStream rng(SeedSpec{11, 0});
  std::vector<double> xs(kN);
  for (auto& x : xs) x = standard_normal(rng);
  const auto mo = moments(xs);
  EXPECT_NEAR(mo.mean, 0.0, 0.004);
  EXPECT_NEAR(mo.variance, 1.0, 0.01);
}

TEST(randkit, complex_gaussian_moments) {
  constexpr int kN = 1000000;
  RngStream rng(SeedSpec{12, 0});
  std::vector<double> re(kN), im(kN), abs2(kN);
  for (int i = 0; i < kN; ++i) {
    const auto z = complex_standard_gaussian(rng);
    re[i] = z.real();
    im[i] = z.imag();
    abs2[i] = std::norm(z);
  }
  EXPECT_NEAR(moments(re).mean, 0.0, 0.004);
  EXPECT_NEAR(moments(im).mean, 0.0, 0.004);
  EXPECT_NEAR(moments(re).variance, 0.5, 0.01);
  EXPECT_NEAR(moments(abs2).mean, 1.0, 0.01);
}

TEST(randkit, complex_gaussian_modulus_is_exponential) {
  constexpr int kN = 100000;
  RngStream rng(SeedSpec{13, 0});
  std::vector<double> abs2(kN);
  for (auto& x : abs2) x = std::norm(complex_standard_gaussian(rng));
  const double d = ks_statistic(abs2, [](double x) { return x <= 0 ? 0.0 : 1.0 - std::exp(-x); });
  EXPECT_LT(d, 0.01);
}

TEST(randkit, gamma_shape_four_moments) {
  constexpr int kN = 1000000;
  RngStream rng(SeedSpec{14, 0});
  std::vector<double> xs(kN);
  for (auto& x : xs) x = sample_gamma(rng, 4.0);
  const auto mo = moments(xs);
  EXPECT_NEAR(mo.mean, 4.0, 0.01);
  EXPECT_NEAR(mo.variance, 4.0, 0.05);
}

TEST(randkit, gamma_shape_one_is_exponential) {
  constexpr int kN = 100000;
  RngStream rng(SeedSpec{15, 0});
  std::vector<double> xs(kN);
  for (auto& x : xs) x = sample_gamma(rng, 1.0);
  EXPECT_LT(ks_statistic(xs, [](double x) { return x <= 0 ? 0.0 : 1.0 - std::exp(-x); }), 0.01);
}

TEST(randkit, gamma_small_shape_boost) {
  constexpr int kN = 200000;
  RngStream rng(SeedSpec{16, 0});
  std::vector<double> xs(kN);
  for (auto& x : xs) {
    x = sample_gamma(rng, 0.5);
    ASSERT_GT(x, 0.0);
  }
  const auto mo = moments(xs);
  EXPECT_NEAR(mo.mean, 0.5, 0.01);
  EXPECT_NEAR(mo.variance, 0.5, 0.02);
}

TEST(randkit, gamma_rejects_non_positive_shape) {
  RngStream rng(SeedSpec{0, 0});
  EXPECT_THROW(sample_gamma(rng, 0.0), ParameterError);
  EXPECT_THROW(sample_gamma(rng, -1.0), ParameterError);
  EXPECT_THROW(sample_gamma(rng, std::nan("")), ParameterError);
}

TEST(randkit, dirichlet_trivial_simplex) {
  RngStream rng(SeedSpec{0, 0});
  const auto p = sample_symmetric_dirichlet(rng, 1, 3.0);
  ASSERT_EQ(p.size(), 1u);
  EXPECT_EQ(p[0], 1.0);
  EXPECT_THROW(sample_symmetric_dirichlet(rng, 0, 1.0), ParameterError);
  EXPECT_THROW(sample_symmetric_dirichlet(rng, 2, 0.0), ParameterError);
}

TEST(randkit, dirichlet_symmetric_mean_and_simplex) {
  constexpr int kN = 100000;
  RngStream rng(SeedSpec{17, 0});
  std::vector<std::vector<double>> comps(3, std::vector<double>(kN));
  for (int i = 0; i < kN; ++i) {
    const auto p = sample_symmetric_dirichlet(rng, 3, 2.0);
    double total = 0.0;
    for (int c = 0; c < 3; ++c) {
      ASSERT_GE(p[c], 0.0);
      comps[c][i] = p[c];
      total += p[c];
    }
    ASSERT_NEAR(total, 1.0, 1e-12);
  }
  for (const auto& c : comps) EXPECT_NEAR(moments(c).mean, 1.0 / 3.0, 0.005);
}

TEST(randkit, dirichlet_two_component_marginal_is_beta) {
  constexpr int kN = 100000;
  for (int n : {2, 3}) {
    RngStream rng(SeedSpec{18, static_cast<std::uint32_t>(n)});
    std::vector<double> first(kN);
    for (auto& x : first) x = sample_symmetric_dirichlet(rng, 2, n)[0];
    EXPECT_LT(ks_statistic(first, [n](double x) { return rstate::testing::beta_nn_cdf(n, x); }), 0.01) << n;
  }
}
