#pragma once

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "darboux/matrix.hpp"

namespace darboux {

/// Relative tolerance on ||M - M^dagger||_F accepted by the checked constructor.
inline constexpr double kHermiticityTolerance = 1e-12;

/// Dense Hermitian matrix. The stored matrix is always exactly (M + M^dagger)/2.
class HermitianOperator {
 public:
  HermitianOperator() = default;
  /// Throws StructureError when M is not Hermitian to kHermiticityTolerance or
  /// holds non-finite entries.
  explicit HermitianOperator(const Matrix& m);

  /// Symmetrizes without checking; `defect` (if given) receives ||M - M^dagger||_F.
  static HermitianOperator symmetrized(const Matrix& m, double* defect = nullptr);

  std::size_t dim() const noexcept { return m_.dim(); }
  const Matrix& matrix() const noexcept { return m_; }
  operator const Matrix&() const noexcept { return m_; }  // NOLINT(google-explicit-constructor)
  double trace() const { return m_.trace().real(); }

 private:
  Matrix m_;
};

struct SpectralOptions {
  /// Jacobi stops once the off-diagonal Frobenius norm drops below tol * ||M||_F.
  double tol = 1e-14;
  int max_sweeps = 100;
};

/// M = U diag(eigenvalues) U^dagger with eigenvalues ascending.
struct SpectralDecomposition {
  std::vector<double> eigenvalues;
  Matrix eigenvectors;  // orthonormal columns

  Matrix reconstruct() const;
  double spectral_radius() const;
  /// Half-open index ranges of eigenvalues that agree within `threshold`.
  std::vector<std::pair<std::size_t, std::size_t>> eigenspaces(double threshold) const;
};

/// Cyclic complex Jacobi. Throws ConvergenceError after `max_sweeps`.
SpectralDecomposition spectral_decompose(const HermitianOperator& m,
                                         const SpectralOptions& opts = {});

using ScalarFunction = std::function<double(double)>;

/// U diag(f(lambda_i)) U^dagger. Throws DomainError if f throws or returns a
/// non-finite value on the spectrum.
HermitianOperator matrix_function(const HermitianOperator& m, const ScalarFunction& f,
                                  const SpectralOptions& opts = {});
HermitianOperator matrix_function(const SpectralDecomposition& d, const ScalarFunction& f);

/// exp(c * M) = U diag(exp(c lambda_i)) U^dagger, for any complex c.
Matrix spectral_exp(const SpectralDecomposition& d, Complex c);

/// Unitary propagator exp(-i t M).
inline Matrix propagator(const SpectralDecomposition& d, double t) {
  return spectral_exp(d, Complex(0.0, -t));
}

/// U M U^dagger.
Matrix conjugate_by(const Matrix& u, const Matrix& m);

}  // namespace darboux
