#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "randstate/ensembles.hpp"
#include "randstate/linalg.hpp"

namespace rstate {

enum class Quantity {
  entropy,                   // S(rho)
  diag_entropy,              // S(rho_diag)
  coherence,                 // S(rho_diag) - S(rho)
  subentropy,                // Q(spectrum of rho)
  isospectral_diag_entropy,  // S((U Lambda U^dagger)_diag) at a fixed spectrum
};

std::string_view to_string(Quantity q);
/// Accepts both "diag_entropy" and "diag-entropy" spellings.
std::optional<Quantity> parse_quantity(std::string_view name);

/// Welford accumulator with Chan's pairwise merge.
class RunningStats {
 public:
  void push(double x);
  void merge(const RunningStats& other);

  std::size_t count() const noexcept { return count_; }
  double mean() const noexcept { return mean_; }
  double m2() const noexcept { return m2_; }
  /// M2 / (count - 1); zero for fewer than two values.
  double variance() const noexcept;
  /// sqrt(M2 / (count (count - 1))); zero for fewer than two values.
  double stderr_of_mean() const noexcept;

 private:
  std::size_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

struct EstimatorConfig {
  EnsembleSpec spec;
  Quantity quantity = Quantity::coherence;
  std::size_t samples = 2;
  std::uint64_t master_seed = 0;
  std::size_t workers = 1;
  /// Required iff quantity == isospectral_diag_entropy.
  std::optional<Spectrum> fixed_spectrum;
  /// For diag_entropy: draw the diagonal directly from its Dirichlet law
  /// instead of sampling the full state.
  bool direct_diagonal = false;

  /// Throws ConfigError / ParameterError on an invalid configuration.
  void validate() const;
};

/// Samples assigned to worker w: floor(samples / workers), plus one for the
/// first samples % workers workers.
std::size_t worker_share(std::size_t samples, std::size_t workers, std::size_t w);

/// Evaluates the configured quantity once using `stream`.
double sample_quantity(RngStream& stream, const EstimatorConfig& config);

/// Runs config.workers tasks, worker w drawing from SeedSpec{master_seed, w},
/// and merges their accumulators in worker-index order.
RunningStats estimate(const EstimatorConfig& config);

/// Closed-form mean matching the quantity of `config`.
double closed_form_for(const EstimatorConfig& config);

struct ComparisonReport {
  EstimatorConfig config;
  std::size_t count = 0;
  double mc_mean = 0.0;
  double mc_stderr = 0.0;
  double closed_form = 0.0;
  double z_score = 0.0;
  bool pass = false;
  double wall_time_ms = 0.0;
};

inline constexpr double kPassThreshold = 4.0;

/// z = (mean - closed_form) / stderr, pass iff |z| <= 4. A difference below
/// the resolution of the closed form (1e-12 relative) scores z = 0, which
/// keeps zero-variance cases (m = 1, uniform spectra) well defined. Throws
/// ParameterError when stats.count() < 2.
ComparisonReport compare(const RunningStats& stats, const EstimatorConfig& config,
                         double wall_time_ms = 0.0);

/// estimate + compare, timing the estimate.
ComparisonReport run_comparison(const EstimatorConfig& config);

struct ConcentrationResult {
  double empirical_fraction = 0.0;
  double bound = 1.0;
  std::size_t exceedances = 0;
  std::size_t samples = 0;
};

/// Fraction of E_k states whose coherence deviates from (m-1)/(2kn) by more
/// than epsilon, paired with concentration_bound(m, kn, epsilon).
ConcentrationResult empirical_concentration(const EnsembleSpec& spec, double epsilon,
                                            std::size_t samples, std::uint64_t master_seed,
                                            std::size_t workers);

/// Coherence of `samples` E_k states drawn with the same worker split as
/// estimate; exposed so several epsilons can share one sample.
std::vector<double> sample_coherences(const EnsembleSpec& spec, std::size_t samples,
                                      std::uint64_t master_seed, std::size_t workers);

/// Diagonal entries of `samples` Wishart(m, n) draws from stream
/// SeedSpec{master_seed, 0}; element i holds the W_ii values.
std::vector<std::vector<double>> wishart_diagonal_samples(std::size_t m, std::size_t n,
                                                          std::size_t samples,
                                                          std::uint64_t master_seed);

/// KS statistic of each diagonal entry of Wishart(m, n) against Gamma(n, 1).
/// Requires m <= n and samples >= 1000.
std::vector<double> gamma_marginal_test(std::size_t m, std::size_t n, std::size_t samples,
                                        std::uint64_t master_seed);

struct MarginalConsistency {
  double statistic = 0.0;  // two-sample KS of the first diagonal entry
  double critical = 0.0;   // 1% critical value
  bool pass = false;
};

/// Compares the first diagonal entry of sampled E_k states with the direct
/// Dirichlet(kn) marginal by a two-sample KS test at the 1% level. The two
/// samples use streams 0 and 1 of master_seed.
MarginalConsistency dirichlet_marginal_test(const EnsembleSpec& spec, std::size_t samples,
                                            std::uint64_t master_seed);

}  // namespace rstate
