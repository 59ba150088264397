#include "hqkd/hermitian_eigen.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hqkd {

namespace {

constexpr int kMaxSweeps = 100;

double off_diagonal_norm_sq(const std::vector<double>& a, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) s += a[i * n + j] * a[i * n + j];
  return s;
}

}  // namespace

std::vector<double> symmetric_eigenvalues(std::vector<double> a, std::size_t n, double tolerance) {
  if (a.size() != n * n) throw std::invalid_argument("symmetric_eigenvalues: size mismatch");

  double total = 0.0;
  for (double v : a) total += v * v;
  const double threshold = tolerance * tolerance * std::max(total, 1e-300);

  for (int sweep = 0; sweep < kMaxSweeps && off_diagonal_norm_sq(a, n) > threshold; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        if (apq == 0.0) continue;
        const double app = a[p * n + p];
        const double aqq = a[q * n + q];
        // Rotation angle that annihilates a(p,q).
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k * n + p];
          const double akq = a[k * n + q];
          a[k * n + p] = c * akp - s * akq;
          a[k * n + q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p * n + k];
          const double aqk = a[q * n + k];
          a[p * n + k] = c * apk - s * aqk;
          a[q * n + k] = s * apk + c * aqk;
        }
        a[p * n + q] = 0.0;
        a[q * n + p] = 0.0;
      }
    }
  }

  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = a[i * n + i];
  std::sort(values.begin(), values.end());
  return values;
}

std::vector<double> hermitian_eigenvalues(std::span<const std::complex<double>> matrix,
                                          std::size_t n, double tolerance) {
  if (matrix.size() != n * n) throw std::invalid_argument("hermitian_eigenvalues: size mismatch");

  const std::size_t m = 2 * n;
  std::vector<double> embed(m * m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto z = matrix[i * n + j];
      embed[i * m + j] = z.real();
      embed[i * m + (j + n)] = -z.imag();
      embed[(i + n) * m + j] = z.imag();
      embed[(i + n) * m + (j + n)] = z.real();
    }
  }

  const auto doubled = symmetric_eigenvalues(std::move(embed), m, tolerance);
  // Each eigenvalue appears twice in the sorted embedding spectrum.
  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = 0.5 * (doubled[2 * i] + doubled[2 * i + 1]);
  return values;
}

}  // namespace hqkd
