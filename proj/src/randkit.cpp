#include "randstate/randkit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "randstate/errors.hpp"

namespace rstate {

namespace {

std::mt19937_64 make_engine(SeedSpec seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed.master_seed & 0xffffffffu),
                    static_cast<std::uint32_t>(seed.master_seed >> 32), seed.stream_index,
                    std::uint32_t{0x9e3779b9u}};
  return std::mt19937_64(seq);
}

}  // namespace

RngStream::RngStream(SeedSpec seed) : seed_(seed), engine_(make_engine(seed)) {}

double RngStream::uniform() {
  // Midpoint of one of 2^53 equal cells: never 0, never 1.
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double RngStream::standard_normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_normal_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double factor = std::sqrt(-2.0 * std::log(s) / s);
  spare_normal_ = v * factor;
  has_spare_ = true;
  return u * factor;
}

std::complex<double> complex_standard_gaussian(RngStream& stream) {
  static const double kHalfSigma = std::sqrt(0.5);
  const double re = stream.standard_normal() * kHalfSigma;
  const double im = stream.standard_normal() * kHalfSigma;
  return {re, im};
}

double sample_gamma(RngStream& stream, double shape) {
  if (!(shape > 0.0) || !std::isfinite(shape)) {
    throw ParameterError("sample_gamma: shape must be a positive finite number");
  }
  if (shape < 1.0) {
    const double boosted = sample_gamma(stream, shape + 1.0);
    // Tiny shapes can underflow the product; keep the result strictly positive.
    const double draw = boosted * std::pow(stream.uniform(), 1.0 / shape);
    return std::max(draw, std::numeric_limits<double>::min());
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = stream.standard_normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = stream.uniform();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

std::vector<double> sample_symmetric_dirichlet(RngStream& stream, std::size_t m, double alpha) {
  if (m == 0) throw ParameterError("sample_symmetric_dirichlet: m must be at least 1");
  if (!(alpha > 0.0)) throw ParameterError("sample_symmetric_dirichlet: alpha must be positive");
  std::vector<double> p(m);
  if (m == 1) {
    p[0] = 1.0;
    return p;
  }
  for (auto& x : p) x = sample_gamma(stream, alpha);
  const double total = std::accumulate(p.begin(), p.end(), 0.0);
  for (auto& x : p) x /= total;
  return p;
}

}  // namespace rstate
