#include "darboux/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "darboux/errors.hpp"

namespace darboux {

HermitianOperator::HermitianOperator(const Matrix& m) {
  if (!m.all_finite()) throw StructureError("matrix has non-finite entries");
  const double defect = (m - m.adjoint()).frobenius_norm();
  const double scale = m.frobenius_norm();
  if (defect > kHermiticityTolerance * scale) {
    std::ostringstream os;
    os << "matrix is not Hermitian: ||M - M^dagger||_F = " << defect << " (||M||_F = " << scale
       << ")";
    throw StructureError(os.str());
  }
  m_ = symmetrized(m).m_;
}

HermitianOperator HermitianOperator::symmetrized(const Matrix& m, double* defect) {
  Matrix adj = m.adjoint();
  if (defect != nullptr) *defect = (m - adj).frobenius_norm();
  HermitianOperator h;
  h.m_ = 0.5 * (m + adj);
  return h;
}

Matrix SpectralDecomposition::reconstruct() const {
  const std::size_t n = eigenvalues.size();
  Matrix out(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      Complex s = 0.0;
      for (std::size_t k = 0; k < n; ++k)
        s += eigenvectors(r, k) * eigenvalues[k] * std::conj(eigenvectors(c, k));
      out(r, c) = s;
    }
  return out;
}

double SpectralDecomposition::spectral_radius() const {
  double r = 0.0;
  for (double e : eigenvalues) r = std::max(r, std::abs(e));
  return r;
}

std::vector<std::pair<std::size_t, std::size_t>> SpectralDecomposition::eigenspaces(
    double threshold) const {
  std::vector<std::pair<std::size_t, std::size_t>> groups;
  std::size_t start = 0;
  for (std::size_t i = 1; i <= eigenvalues.size(); ++i) {
    if (i == eigenvalues.size() || eigenvalues[i] - eigenvalues[i - 1] > threshold) {
      groups.emplace_back(start, i);
      start = i;
    }
  }
  return groups;
}

namespace {

double off_diagonal_norm(const Matrix& a) {
  double s = 0.0;
  for (std::size_t r = 0; r < a.dim(); ++r)
    for (std::size_t c = 0; c < a.dim(); ++c)
      if (r != c) s += std::norm(a(r, c));
  return std::sqrt(s);
}

// A <- G^dagger A G and V <- V G for the complex Givens rotation G that zeroes a(p,q).
void rotate(Matrix& a, Matrix& v, std::size_t p, std::size_t q) {
  const Complex apq = a(p, q);
  const double g = std::abs(apq);
  if (g == 0.0) return;
  const Complex phase = apq / g;
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();
  const double theta = (aqq - app) / (2.0 * g);
  const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  // G = [[c, s e], [-s conj(e), c]] on the (p, q) plane.
  const Complex gpq = s * phase;
  const Complex gqp = -s * std::conj(phase);
  const std::size_t n = a.dim();
  for (std::size_t k = 0; k < n; ++k) {  // columns: A G
    const Complex akp = a(k, p);
    const Complex akq = a(k, q);
    a(k, p) = akp * c + akq * gqp;
    a(k, q) = akp * gpq + akq * c;
  }
  for (std::size_t k = 0; k < n; ++k) {  // rows: G^dagger A
    const Complex apk = a(p, k);
    const Complex aqk = a(q, k);
    a(p, k) = c * apk + std::conj(gqp) * aqk;
    a(q, k) = std::conj(gpq) * apk + c * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = a(p, p).real();
  a(q, q) = a(q, q).real();
  for (std::size_t k = 0; k < n; ++k) {
    const Complex vkp = v(k, p);
    const Complex vkq = v(k, q);
    v(k, p) = vkp * c + vkq * gqp;
    v(k, q) = vkp * gpq + vkq * c;
  }
}

}  // namespace

SpectralDecomposition spectral_decompose(const HermitianOperator& m, const SpectralOptions& opts) {
  const std::size_t n = m.dim();
  Matrix a = m.matrix();
  Matrix v = Matrix::identity(n);
  const double scale = a.frobenius_norm();
  const double threshold = opts.tol * std::max(scale, 1e-300);

  int sweep = 0;
  double off = off_diagonal_norm(a);
  while (off > threshold) {
    if (sweep == opts.max_sweeps) {
      throw ConvergenceError("Jacobi eigensolver did not converge", off);
    }
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) rotate(a, v, p, q);
    off = off_diagonal_norm(a);
    ++sweep;
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

  SpectralDecomposition d;
  d.eigenvalues.resize(n);
  d.eigenvectors = Matrix(n);
  for (std::size_t k = 0; k < n; ++k) {
    d.eigenvalues[k] = a(order[k], order[k]).real();
    for (std::size_t r = 0; r < n; ++r) d.eigenvectors(r, k) = v(r, order[k]);
  }
  return d;
}

HermitianOperator matrix_function(const SpectralDecomposition& d, const ScalarFunction& f) {
  const std::size_t n = d.eigenvalues.size();
  std::vector<double> fx(n);
  for (std::size_t k = 0; k < n; ++k) {
    fx[k] = f(d.eigenvalues[k]);
    if (!std::isfinite(fx[k])) {
      std::ostringstream os;
      os << "f is not finite at eigenvalue " << d.eigenvalues[k];
      throw DomainError(os.str());
    }
  }
  SpectralDecomposition mapped{fx, d.eigenvectors};
  return HermitianOperator::symmetrized(mapped.reconstruct());
}

HermitianOperator matrix_function(const HermitianOperator& m, const ScalarFunction& f,
                                  const SpectralOptions& opts) {
  return matrix_function(spectral_decompose(m, opts), f);
}

Matrix spectral_exp(const SpectralDecomposition& d, Complex c) {
  const std::size_t n = d.eigenvalues.size();
  Matrix out(n);
  std::vector<Complex> e(n);
  for (std::size_t k = 0; k < n; ++k) e[k] = std::exp(c * d.eigenvalues[k]);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t col = 0; col < n; ++col) {
      Complex s = 0.0;
      for (std::size_t k = 0; k < n; ++k)
        s += d.eigenvectors(r, k) * e[k] * std::conj(d.eigenvectors(col, k));
      out(r, col) = s;
    }
  return out;
}

Matrix conjugate_by(const Matrix& u, const Matrix& m) { return u * m * u.adjoint(); }

}  // namespace darboux
