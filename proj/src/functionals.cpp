#include "randstate/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include "randstate/errors.hpp"

namespace rstate {

namespace {

HarmonicTable& global_harmonics() {
  static HarmonicTable table;
  return table;
}

long double harmonic_asymptotic(long double k) {
  const long double inv = 1.0L / k;
  const long double inv2 = inv * inv;
  return std::log(k) + kEulerGamma + 0.5L * inv -
         inv2 * (1.0L / 12 - inv2 * (1.0L / 120 - inv2 * (1.0L / 252 - inv2 / 240)));
}

// Neumaier summation in long double.
class CompensatedSum {
 public:
  void add(long double x) {
    const long double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  long double value() const { return sum_ + carry_; }

 private:
  long double sum_ = 0.0L;
  long double carry_ = 0.0L;
};

}  // namespace

long double HarmonicTable::operator()(std::size_t k) {
  if (k == 0) throw ParameterError("harmonic number requires k >= 1");
  if (k >= kTableLimit) return harmonic_asymptotic(static_cast<long double>(k));
  {
    std::shared_lock lock(mutex_);
    if (k < values_.size()) return values_[k];
  }
  std::unique_lock lock(mutex_);
  // Grow geometrically so repeated calls with increasing k stay cheap.
  const std::size_t target = std::min(kTableLimit, std::max(k + 1, 2 * values_.size()));
  values_.reserve(target);
  // Kahan-compensated running sum; carry_ persists across growth steps.
  while (values_.size() < target) {
    const std::size_t j = values_.size();
    const long double y = 1.0L / static_cast<long double>(j) - carry_;
    const long double t = values_.back() + y;
    carry_ = (t - values_.back()) - y;
    values_.push_back(t);
  }
  return values_[k];
}

std::size_t HarmonicTable::cached_size() const {
  std::shared_lock lock(mutex_);
  return values_.size();
}

long double harmonic_extended(std::size_t k) { return global_harmonics()(k); }

double harmonic(std::size_t k) { return static_cast<double>(harmonic_extended(k)); }

double shannon_entropy(std::span<const double> p) {
  long double total = 0.0L;
  for (double x : p) {
    if (!(x >= -1e-12)) throw DomainError("shannon_entropy: negative or invalid probability");
    total += x;
  }
  if (p.empty() || std::fabs(total - 1.0L) > 1e-8L) {
    throw DomainError("shannon_entropy: probabilities do not sum to one");
  }
  auto term = [](double x) -> long double {
    if (x <= 0.0) return 0.0L;
    const long double lx = x;
    return -lx * std::log(lx);
  };
  long double h = 0.0L;
  if (p.size() > 32) {
    CompensatedSum sum;
    for (double x : p) sum.add(term(x));
    h = sum.value();
  } else {
    for (double x : p) h += term(x);
  }
  return std::max(0.0, static_cast<double>(h));
}

double von_neumann_entropy(const DensityMatrix& rho) { return shannon_entropy(rho.spectrum().values()); }

double relative_entropy_of_coherence(const DensityMatrix& rho) {
  const double c = shannon_entropy(rho.diagonal()) - von_neumann_entropy(rho);
  if (c < -1e-9) throw NumericalError("relative entropy of coherence is negative", c);
  return std::max(0.0, c);
}

long double subentropy_kernel_taylor(std::size_t m, std::size_t r, long double x) {
  if (x <= 0.0L) return 0.0L;
  long double binom = 1.0L;
  for (std::size_t i = 0; i < r; ++i) binom = binom * static_cast<long double>(m - i) / (i + 1);
  const long double hm = harmonic_extended(m);
  const long double hmr = m - r == 0 ? 0.0L : harmonic_extended(m - r);
  return binom * std::pow(x, static_cast<long double>(m - r)) * (std::log(x) + hm - hmr);
}

double subentropy(const Spectrum& lambda) {
  const std::size_t m = lambda.size();
  if (m == 0) throw ParameterError("subentropy: empty spectrum");

  std::vector<long double> nodes(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double v = lambda[i];
    nodes[i] = v < kSubentropyZeroNode ? 0.0L : static_cast<long double>(v);
  }
  std::sort(nodes.begin(), nodes.end());

  // Merge chains of nodes with consecutive gaps below the cluster threshold.
  for (std::size_t begin = 0; begin < m;) {
    std::size_t end = begin + 1;
    while (end < m && nodes[end] - nodes[end - 1] < kSubentropyClusterGap) ++end;
    if (end - begin > 1) {
      long double rep = 0.0L;
      if (nodes[begin] != 0.0L) {
        for (std::size_t i = begin; i < end; ++i) rep += nodes[i];
        rep /= static_cast<long double>(end - begin);
      }
      std::fill(nodes.begin() + begin, nodes.begin() + end, rep);
    }
    begin = end;
  }

  // Newton table, column by column: table[i] holds g[x_i, ..., x_{i+order}].
  std::vector<long double> table(m);
  for (std::size_t i = 0; i < m; ++i) table[i] = subentropy_kernel_taylor(m, 0, nodes[i]);
  for (std::size_t order = 1; order < m; ++order) {
    for (std::size_t i = 0; i + order < m; ++i) {
      const long double lo = nodes[i];
      const long double hi = nodes[i + order];
      if (hi == lo) {
        table[i] = subentropy_kernel_taylor(m, order, lo);
      } else {
        table[i] = (table[i + 1] - table[i]) / (hi - lo);
      }
    }
  }
  return std::max(0.0, static_cast<double>(-table[0]));
}

}  // namespace rstate
