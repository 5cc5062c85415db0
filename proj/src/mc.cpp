#include "randstate/mc.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <thread>

#include "randstate/closedforms.hpp"
#include "randstate/errors.hpp"
#include "randstate/functionals.hpp"
#include "randstate/stats.hpp"

namespace rstate {

namespace {

// Runs body(w, stream_w) for every worker on its own thread and rethrows the
// first failure (by worker index) after all threads have joined.
void fan_out(std::size_t workers, std::uint64_t master_seed,
             const std::function<void(std::size_t, RngStream&)>& body) {
  std::vector<std::exception_ptr> errors(workers);
  auto task = [&](std::size_t w) {
    try {
      RngStream stream(SeedSpec{master_seed, static_cast<std::uint32_t>(w)});
      body(w, stream);
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (workers == 1) {
    task(0);
  } else {
    std::vector<std::jthread> threads;
    threads.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) threads.emplace_back(task, w);
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace

std::string_view to_string(Quantity q) {
  switch (q) {
    case Quantity::entropy: return "entropy";
    case Quantity::diag_entropy: return "diag_entropy";
    case Quantity::coherence: return "coherence";
    case Quantity::subentropy: return "subentropy";
    case Quantity::isospectral_diag_entropy: return "isospectral_diag_entropy";
  }
  return "unknown";
}

std::optional<Quantity> parse_quantity(std::string_view name) {
  for (auto q : {Quantity::entropy, Quantity::diag_entropy, Quantity::coherence, Quantity::subentropy,
                 Quantity::isospectral_diag_entropy}) {
    std::string canonical(to_string(q));
    std::string dashed = canonical;
    for (auto& c : dashed)
      if (c == '_') c = '-';
    if (name == canonical || name == dashed) return q;
  }
  return std::nullopt;
}

void RunningStats::push(double x) {
  ++count_;
  const double delta = x - mean_;
  mean_ += delta / static_cast<double>(count_);
  m2_ += delta * (x - mean_);
}

void RunningStats::merge(const RunningStats& other) {
  if (other.count_ == 0) return;
  if (count_ == 0) {
    *this = other;
    return;
  }
  const double na = static_cast<double>(count_);
  const double nb = static_cast<double>(other.count_);
  const double n = na + nb;
  const double delta = other.mean_ - mean_;
  mean_ += delta * nb / n;
  m2_ += other.m2_ + delta * delta * na * nb / n;
  count_ += other.count_;
}

double RunningStats::variance() const noexcept {
  return count_ < 2 ? 0.0 : m2_ / static_cast<double>(count_ - 1);
}

double RunningStats::stderr_of_mean() const noexcept {
  if (count_ < 2) return 0.0;
  const double n = static_cast<double>(count_);
  return std::sqrt(m2_ / (n * (n - 1.0)));
}

void EstimatorConfig::validate() const {
  if (samples < 2) throw ConfigError("estimator needs at least 2 samples");
  if (workers < 1) throw ConfigError("estimator needs at least 1 worker");
  if (quantity == Quantity::isospectral_diag_entropy) {
    if (!fixed_spectrum) throw ConfigError("isospectral_diag_entropy requires a fixed spectrum");
  } else {
    spec.validate();
  }
}

std::size_t worker_share(std::size_t samples, std::size_t workers, std::size_t w) {
  return samples / workers + (w < samples % workers ? 1 : 0);
}

double sample_quantity(RngStream& stream, const EstimatorConfig& config) {
  switch (config.quantity) {
    case Quantity::entropy:
      return von_neumann_entropy(sample_mixing_state(stream, config.spec));
    case Quantity::diag_entropy:
      if (config.direct_diagonal) return shannon_entropy(sample_diag_dirichlet(stream, config.spec));
      return shannon_entropy(sample_mixing_state(stream, config.spec).diagonal());
    case Quantity::coherence:
      return relative_entropy_of_coherence(sample_mixing_state(stream, config.spec));
    case Quantity::subentropy:
      return subentropy(sample_mixing_state(stream, config.spec).spectrum());
    case Quantity::isospectral_diag_entropy:
      return shannon_entropy(sample_isospectral_diagonal(stream, *config.fixed_spectrum));
  }
  throw ConfigError("unknown quantity");
}

RunningStats estimate(const EstimatorConfig& config) {
  config.validate();
  std::vector<RunningStats> partial(config.workers);
  fan_out(config.workers, config.master_seed, [&](std::size_t w, RngStream& stream) {
    const std::size_t share = worker_share(config.samples, config.workers, w);
    for (std::size_t i = 0; i < share; ++i) partial[w].push(sample_quantity(stream, config));
  });
  RunningStats total;
  for (const auto& p : partial) total.merge(p);
  return total;
}

double closed_form_for(const EstimatorConfig& config) {
  const auto& s = config.spec;
  switch (config.quantity) {
    case Quantity::entropy: return avg_entropy_page(s.m, s.environment());
    case Quantity::diag_entropy: return avg_diag_entropy(s.m, s.n, s.k);
    case Quantity::coherence: return avg_coherence(s.m, s.n, s.k);
    case Quantity::subentropy: return avg_subentropy(s.m, s.environment());
    case Quantity::isospectral_diag_entropy:
      if (!config.fixed_spectrum) throw ConfigError("isospectral_diag_entropy requires a fixed spectrum");
      return isospectral_avg_diag_entropy(*config.fixed_spectrum);
  }
  throw ConfigError("unknown quantity");
}

ComparisonReport compare(const RunningStats& stats, const EstimatorConfig& config, double wall_time_ms) {
  if (stats.count() < 2) throw ParameterError("compare needs at least two samples");
  ComparisonReport report;
  report.config = config;
  report.count = stats.count();
  report.mc_mean = stats.mean();
  report.mc_stderr = stats.stderr_of_mean();
  report.closed_form = closed_form_for(config);
  report.wall_time_ms = wall_time_ms;
  const double diff = report.mc_mean - report.closed_form;
  const double resolution = 1e-12 * std::max(1.0, std::abs(report.closed_form));
  if (std::abs(diff) <= resolution) {
    report.z_score = 0.0;
  } else if (report.mc_stderr > 0.0) {
    report.z_score = diff / report.mc_stderr;
  } else {
    report.z_score = std::copysign(std::numeric_limits<double>::infinity(), diff);
  }
  report.pass = std::abs(report.z_score) <= kPassThreshold;
  return report;
}

ComparisonReport run_comparison(const EstimatorConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  const RunningStats stats = estimate(config);
  const auto stop = std::chrono::steady_clock::now();
  return compare(stats, config, std::chrono::duration<double, std::milli>(stop - start).count());
}

std::vector<double> sample_coherences(const EnsembleSpec& spec, std::size_t samples,
                                      std::uint64_t master_seed, std::size_t workers) {
  spec.validate();
  if (workers < 1) throw ConfigError("needs at least 1 worker");
  std::vector<std::vector<double>> partial(workers);
  fan_out(workers, master_seed, [&](std::size_t w, RngStream& stream) {
    const std::size_t share = worker_share(samples, workers, w);
    partial[w].reserve(share);
    for (std::size_t i = 0; i < share; ++i)
      partial[w].push_back(relative_entropy_of_coherence(sample_mixing_state(stream, spec)));
  });
  std::vector<double> all;
  all.reserve(samples);
  for (const auto& p : partial) all.insert(all.end(), p.begin(), p.end());
  return all;
}

ConcentrationResult empirical_concentration(const EnsembleSpec& spec, double epsilon,
                                            std::size_t samples, std::uint64_t master_seed,
                                            std::size_t workers) {
  spec.validate();
  if (spec.m < 3) throw ParameterError("concentration experiment requires m >= 3");
  if (!(epsilon > 0.0)) throw ParameterError("concentration experiment requires epsilon > 0");
  if (samples < 1) throw ConfigError("concentration experiment needs samples");

  ConcentrationResult result;
  result.bound = concentration_bound(spec.m, spec.environment(), epsilon);
  const double center = avg_coherence(spec.m, spec.n, spec.k);
  for (double c : sample_coherences(spec, samples, master_seed, workers))
    if (std::abs(c - center) > epsilon) ++result.exceedances;
  result.samples = samples;
  result.empirical_fraction = static_cast<double>(result.exceedances) / static_cast<double>(samples);
  return result;
}

std::vector<std::vector<double>> wishart_diagonal_samples(std::size_t m, std::size_t n,
                                                          std::size_t samples,
                                                          std::uint64_t master_seed) {
  RngStream stream(SeedSpec{master_seed, 0});
  std::vector<std::vector<double>> diag(m);
  for (auto& d : diag) d.reserve(samples);
  for (std::size_t s = 0; s < samples; ++s) {
    const auto w = sample_wishart(stream, m, n);
    for (std::size_t i = 0; i < m; ++i) diag[i].push_back(w(i, i).real());
  }
  return diag;
}

std::vector<double> gamma_marginal_test(std::size_t m, std::size_t n, std::size_t samples,
                                        std::uint64_t master_seed) {
  if (m < 1 || m > n) throw ParameterError("gamma_marginal_test requires 1 <= m <= n");
  if (samples < 1000) throw ParameterError("gamma_marginal_test requires at least 1000 samples");
  const double shape = static_cast<double>(n);
  std::vector<double> ks;
  for (auto& column : wishart_diagonal_samples(m, n, samples, master_seed))
    ks.push_back(ks_statistic(std::move(column), [shape](double x) { return gamma_cdf(shape, x); }));
  return ks;
}

MarginalConsistency dirichlet_marginal_test(const EnsembleSpec& spec, std::size_t samples,
                                            std::uint64_t master_seed) {
  spec.validate();
  if (samples < 1) throw ParameterError("dirichlet_marginal_test needs samples");
  RngStream state_stream(SeedSpec{master_seed, 0});
  RngStream direct_stream(SeedSpec{master_seed, 1});
  std::vector<double> from_states, direct;
  from_states.reserve(samples);
  direct.reserve(samples);
  for (std::size_t s = 0; s < samples; ++s) {
    from_states.push_back(sample_mixing_state(state_stream, spec).diagonal()[0]);
    direct.push_back(sample_diag_dirichlet(direct_stream, spec)[0]);
  }
  MarginalConsistency result;
  result.statistic = ks_two_sample(std::move(from_states), std::move(direct));
  result.critical = ks_two_sample_critical_value(0.01, samples, samples);
  result.pass = result.statistic < result.critical;
  return result;
}

}  // namespace rstate
