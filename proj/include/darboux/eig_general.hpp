#pragma once

#include <cstddef>
#include <vector>

#include "darboux/matrix.hpp"

namespace darboux {

struct GeneralEigenOptions {
  /// Residual contract: ||M v - lambda v|| <= tol * ||M||_F * ||v||.
  double tol = 1e-10;
  std::size_t max_dim = 16;
  /// Eigenvalues within degeneracy * max(spectral radius, 1) share one eigenspace.
  double degeneracy = 1e-8;
  int max_iterations_per_eigenvalue = 60;
};

struct EigenPair {
  Complex value;
  StateVector vector;  // unit norm
};

/// Eigenpairs of a small general complex matrix, sorted by (Re, Im).
/// Hessenberg reduction plus Wilkinson-shifted QR gives the eigenvalues; each
/// eigenspace is then recovered as the numerical null space of M - lambda I.
/// Degenerate eigenspaces come back as orthonormal bases. Throws
/// ParameterError (too large), ConvergenceError, or StructureError (defective).
std::vector<EigenPair> eig_general_small(const Matrix& m, const GeneralEigenOptions& opts = {});

/// Eigenvalues only (QR iteration), unsorted.
std::vector<Complex> eigenvalues_general(const Matrix& m, const GeneralEigenOptions& opts = {});

}  // namespace darboux
