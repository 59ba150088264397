#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace hqkd {

/// Eigenvalues (ascending) of a row-major n x n Hermitian matrix.
///
/// Runs cyclic Jacobi on the real symmetric embedding [[Re, -Im], [Im, Re]],
/// whose spectrum is that of the input with every eigenvalue doubled. Sweeps
/// stop once the off-diagonal Frobenius norm falls below `tolerance` times the
/// matrix norm.
std::vector<double> hermitian_eigenvalues(std::span<const std::complex<double>> matrix,
                                          std::size_t n, double tolerance = 1e-12);

/// Same routine for a real symmetric matrix (destroyed in place).
std::vector<double> symmetric_eigenvalues(std::vector<double> matrix, std::size_t n,
                                          double tolerance = 1e-12);

}  // namespace hqkd
