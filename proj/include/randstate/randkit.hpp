#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace rstate {

/// Identifies one reproducible substream: a run-wide master seed plus the
/// index of the worker that owns the stream.
struct SeedSpec {
  std::uint64_t master_seed = 0;
  std::uint32_t stream_index = 0;
};

/// Single-owner random stream.
///
/// The engine is a 64-bit Mersenne twister. Its state is filled through
/// std::seed_seq from the words (lo32(master), hi32(master), stream_index,
/// 0x9e3779b9); seed_seq scrambles every input word into every state word,
/// so neighbouring stream indices give unrelated states. Both the engine and
/// seed_seq are fully specified by the standard, and every transform below is
/// written out here, so the byte stream is identical on every platform.
class RngStream {
 public:
  explicit RngStream(SeedSpec seed);

  SeedSpec seed() const noexcept { return seed_; }

  /// Raw 64 random bits.
  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform();

  /// N(0,1) via the polar Box-Muller method. Draws come in pairs; the spare
  /// is held in the stream and returned by the next call.
  double standard_normal();

 private:
  SeedSpec seed_;
  std::mt19937_64 engine_;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

inline double standard_normal(RngStream& stream) { return stream.standard_normal(); }

/// Complex standard Gaussian: real and imaginary parts i.i.d. N(0, 1/2),
/// so E|z|^2 = 1. The real part is drawn first.
std::complex<double> complex_standard_gaussian(RngStream& stream);

/// Gamma(shape, 1) by the Marsaglia-Tsang squeeze method; shapes below one
/// use the Gamma(shape + 1) * U^(1/shape) boost. Throws ParameterError for
/// shape <= 0 or non-finite shape.
double sample_gamma(RngStream& stream, double shape);

/// Dirichlet(alpha, ..., alpha) of length m as normalized Gamma(alpha) draws.
/// Throws ParameterError for m == 0 or alpha <= 0.
std::vector<double> sample_symmetric_dirichlet(RngStream& stream, std::size_t m, double alpha);

}  // namespace rstate
