#include "randstate/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

#include "randstate/errors.hpp"

namespace rstate {

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_) {
    throw ParameterError("ComplexMatrix: entry count does not match rows * cols");
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix id(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) id(i, i) = 1.0;
  return id;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

double ComplexMatrix::frobenius_norm() const {
  double sum = 0.0;
  for (const auto& z : entries_) sum += std::norm(z);
  return std::sqrt(sum);
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols_ != b.rows_) throw ParameterError("ComplexMatrix product: inner dimensions differ");
  ComplexMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Complex aik = a(i, k);
      for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) {
    throw ParameterError("ComplexMatrix difference: shapes differ");
  }
  ComplexMatrix out = a;
  for (std::size_t i = 0; i < out.entries_.size(); ++i) out.entries_[i] -= b.entries_[i];
  return out;
}

HermitianMatrix::HermitianMatrix(const ComplexMatrix& a) : matrix_(a.rows(), a.cols()) {
  if (a.rows() != a.cols()) throw ParameterError("HermitianMatrix: input must be square");
  const std::size_t n = a.rows();
  for (std::size_t i = 0; i < n; ++i) {
    matrix_(i, i) = a(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex upper = 0.5 * (a(i, j) + std::conj(a(j, i)));
      matrix_(i, j) = upper;
      matrix_(j, i) = std::conj(upper);
    }
  }
}

std::vector<double> HermitianMatrix::diagonal() const {
  std::vector<double> d(dim());
  for (std::size_t i = 0; i < dim(); ++i) d[i] = matrix_(i, i).real();
  return d;
}

double HermitianMatrix::trace() const {
  double t = 0.0;
  for (std::size_t i = 0; i < dim(); ++i) t += matrix_(i, i).real();
  return t;
}

HermitianMatrix HermitianMatrix::divided_by(double divisor) const {
  HermitianMatrix out = *this;
  const std::size_t n = dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out.matrix_(i, j) /= divisor;
  return out;
}

Spectrum::Spectrum(std::vector<double> values) : values_(std::move(values)) {
  std::sort(values_.begin(), values_.end(), std::greater<>());
}

Spectrum Spectrum::probability(std::vector<double> values) {
  for (auto& v : values) {
    if (!std::isfinite(v) || v < -1e-12) {
      throw DomainError("spectrum entry " + std::to_string(v) + " is not a probability");
    }
    if (v < 0.0) v = 0.0;
  }
  const double total = std::accumulate(values.begin(), values.end(), 0.0);
  if (values.empty() || std::abs(total - 1.0) > 1e-10) {
    throw DomainError("spectrum does not sum to one");
  }
  return Spectrum(std::move(values));
}

HermitianMatrix gram(const ComplexMatrix& z) {
  const std::size_t m = z.rows();
  ComplexMatrix w(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    const auto zi = z.row(i);
    double diag = 0.0;
    for (const auto& x : zi) diag += std::norm(x);
    w(i, i) = diag;
    for (std::size_t j = i + 1; j < m; ++j) {
      const auto zj = z.row(j);
      Complex s = 0.0;
      for (std::size_t c = 0; c < zi.size(); ++c) s += zi[c] * std::conj(zj[c]);
      w(i, j) = s;
      w(j, i) = std::conj(s);
    }
  }
  return HermitianMatrix(w);
}

Spectrum hermitian_eigenvalues(const HermitianMatrix& input, const JacobiOptions& options) {
  const std::size_t n = input.dim();
  ComplexMatrix a = input.matrix();
  if (n <= 1) return Spectrum(input.diagonal());

  auto off_mass = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) s += 2.0 * std::norm(a(i, j));
    return std::sqrt(s);
  };

  const double threshold = options.relative_tolerance * a.frobenius_norm();
  double off = off_mass();
  int sweep = 0;
  while (off > threshold) {
    if (sweep == options.max_sweeps) {
      throw NumericalError("hermitian_eigenvalues: Jacobi did not converge", off);
    }
    ++sweep;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double mag = std::abs(a(p, q));
        if (mag == 0.0) continue;
        // Phase row/column q so that a(p,q) becomes the real number |a(p,q)|.
        const Complex phase = a(p, q) / mag;
        for (std::size_t r = 0; r < n; ++r) {
          a(r, q) *= std::conj(phase);
          a(q, r) *= phase;
        }
        a(p, q) = mag;
        a(q, p) = mag;

        // Real symmetric Jacobi rotation annihilating a(p,q).
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * mag);
        double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0.0) t = -t;
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          const Complex arp = a(r, p);
          const Complex arq = a(r, q);
          a(r, p) = c * arp - s * arq;
          a(r, q) = s * arp + c * arq;
          a(p, r) = std::conj(a(r, p));
          a(q, r) = std::conj(a(r, q));
        }
        a(p, p) = app - t * mag;
        a(q, q) = aqq + t * mag;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
      }
    }
    off = off_mass();
  }

  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = a(i, i).real();
  return Spectrum(std::move(values));
}

ComplexMatrix haar_unitary(RngStream& stream, std::size_t m) {
  if (m == 0) throw ParameterError("haar_unitary: dimension must be at least 1");
  ComplexMatrix g(m, m);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c < m; ++c) g(r, c) = complex_standard_gaussian(stream);

  // Column-major working copy; columns are orthonormalized in place.
  std::vector<std::vector<Complex>> cols(m, std::vector<Complex>(m));
  for (std::size_t c = 0; c < m; ++c)
    for (std::size_t r = 0; r < m; ++r) cols[c][r] = g(r, c);

  std::vector<Complex> r_diag(m);
  for (std::size_t j = 0; j < m; ++j) {
    auto& v = cols[j];
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t i = 0; i < j; ++i) {
        Complex proj = 0.0;  // <q_i, v>
        for (std::size_t r = 0; r < m; ++r) proj += std::conj(cols[i][r]) * v[r];
        for (std::size_t r = 0; r < m; ++r) v[r] -= proj * cols[i][r];
      }
    }
    double norm = 0.0;
    for (const auto& x : v) norm += std::norm(x);
    norm = std::sqrt(norm);
    if (norm == 0.0) throw NumericalError("haar_unitary: rank-deficient Ginibre draw", 0.0);
    for (auto& x : v) x /= norm;
    r_diag[j] = norm;
  }

  ComplexMatrix q(m, m);
  for (std::size_t c = 0; c < m; ++c) {
    const Complex phase = r_diag[c] / std::abs(r_diag[c]);
    for (std::size_t r = 0; r < m; ++r) q(r, c) = cols[c][r] * phase;
  }
  return q;
}

std::vector<double> unitary_conjugate_diagonal(const ComplexMatrix& u, const Spectrum& lambda) {
  const std::size_t m = lambda.size();
  if (u.rows() != m || u.cols() != m) {
    throw ParameterError("unitary_conjugate_diagonal: unitary and spectrum dimensions differ");
  }
  if (m == 0) return {};
  // Written relative to the smallest eigenvalue: rows of U have unit norm, so
  // d_i = lambda_min + sum_j |U_ij|^2 (lambda_j - lambda_min). A uniform
  // spectrum then maps to an exactly uniform diagonal.
  const double base = lambda[m - 1];
  std::vector<double> d(m, base);
  for (std::size_t i = 0; i < m; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < m; ++j) s += std::norm(u(i, j)) * (lambda[j] - base);
    d[i] += s;
  }
  return d;
}

}  // namespace rstate
