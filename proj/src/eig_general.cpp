#include "darboux/eig_general.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "darboux/errors.hpp"
#include "darboux/hermitian.hpp"

namespace darboux {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

Matrix hessenberg(Matrix h) {
  const std::size_t n = h.dim();
  for (std::size_t k = 0; k + 2 < n; ++k) {
    double xnorm = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) xnorm += std::norm(h(i, k));
    xnorm = std::sqrt(xnorm);
    if (xnorm == 0.0) continue;
    const Complex x0 = h(k + 1, k);
    const Complex phase = std::abs(x0) > 0.0 ? x0 / std::abs(x0) : Complex(1.0);
    std::vector<Complex> v(n, 0.0);
    for (std::size_t i = k + 1; i < n; ++i) v[i] = h(i, k);
    v[k + 1] += phase * xnorm;
    double vnorm = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) vnorm += std::norm(v[i]);
    vnorm = std::sqrt(vnorm);
    for (std::size_t i = k + 1; i < n; ++i) v[i] /= vnorm;
    // H <- (I - 2 v v^dagger) H
    for (std::size_t c = 0; c < n; ++c) {
      Complex s = 0.0;
      for (std::size_t i = k + 1; i < n; ++i) s += std::conj(v[i]) * h(i, c);
      for (std::size_t i = k + 1; i < n; ++i) h(i, c) -= 2.0 * v[i] * s;
    }
    // H <- H (I - 2 v v^dagger)
    for (std::size_t r = 0; r < n; ++r) {
      Complex s = 0.0;
      for (std::size_t i = k + 1; i < n; ++i) s += h(r, i) * v[i];
      for (std::size_t i = k + 1; i < n; ++i) h(r, i) -= 2.0 * s * std::conj(v[i]);
    }
    for (std::size_t i = k + 2; i < n; ++i) h(i, k) = 0.0;
  }
  return h;
}

Complex wilkinson_shift(Complex a, Complex b, Complex c, Complex d) {
  const Complex half_tr = 0.5 * (a + d);
  const Complex disc = std::sqrt(0.25 * (a - d) * (a - d) + b * c);
  const Complex l1 = half_tr + disc;
  const Complex l2 = half_tr - disc;
  return std::abs(l1 - d) < std::abs(l2 - d) ? l1 : l2;
}

}  // namespace

std::vector<Complex> eigenvalues_general(const Matrix& m, const GeneralEigenOptions& opts) {
  const std::size_t n = m.dim();
  if (n == 0) throw DimensionMismatch("empty matrix");
  if (n > opts.max_dim) {
    throw ParameterError("eig_general_small: dimension " + std::to_string(n) + " exceeds cap " +
                         std::to_string(opts.max_dim));
  }
  if (!m.all_finite()) throw StructureError("matrix has non-finite entries");

  Matrix h = hessenberg(m);
  std::vector<Complex> values(n);
  std::vector<Complex> cs(n), ss(n);
  std::ptrdiff_t hi = static_cast<std::ptrdiff_t>(n) - 1;
  int iter = 0;
  while (hi >= 0) {
    std::ptrdiff_t lo = hi;
    while (lo > 0) {
      const double scale = std::abs(h(lo, lo)) + std::abs(h(lo - 1, lo - 1));
      if (std::abs(h(lo, lo - 1)) <= kEps * std::max(scale, kEps)) {
        h(lo, lo - 1) = 0.0;
        break;
      }
      --lo;
    }
    if (lo == hi) {
      values[hi] = h(hi, hi);
      --hi;
      iter = 0;
      continue;
    }
    if (++iter > opts.max_iterations_per_eigenvalue) {
      throw ConvergenceError("QR iteration did not converge", std::abs(h(hi, hi - 1)));
    }
    Complex shift = wilkinson_shift(h(hi - 1, hi - 1), h(hi - 1, hi), h(hi, hi - 1), h(hi, hi));
    if (iter % 11 == 0) shift = h(hi, hi) + std::abs(h(hi, hi - 1));  // exceptional shift

    for (std::ptrdiff_t i = lo; i <= hi; ++i) h(i, i) -= shift;
    for (std::ptrdiff_t k = lo; k < hi; ++k) {
      const Complex a = h(k, k);
      const Complex b = h(k + 1, k);
      const double r = std::hypot(std::abs(a), std::abs(b));
      const Complex c = r > 0.0 ? a / r : Complex(1.0);
      const Complex s = r > 0.0 ? b / r : Complex(0.0);
      cs[k] = c;
      ss[k] = s;
      for (std::ptrdiff_t col = k; col <= hi; ++col) {
        const Complex x = h(k, col);
        const Complex y = h(k + 1, col);
        h(k, col) = std::conj(c) * x + std::conj(s) * y;
        h(k + 1, col) = -s * x + c * y;
      }
    }
    for (std::ptrdiff_t k = lo; k < hi; ++k) {
      const Complex c = cs[k];
      const Complex s = ss[k];
      const std::ptrdiff_t last = std::min(k + 2, hi);
      for (std::ptrdiff_t row = lo; row <= last; ++row) {
        const Complex x = h(row, k);
        const Complex y = h(row, k + 1);
        h(row, k) = x * c + y * s;
        h(row, k + 1) = -x * std::conj(s) + y * std::conj(c);
      }
    }
    for (std::ptrdiff_t i = lo; i <= hi; ++i) h(i, i) += shift;
  }
  return values;
}

std::vector<EigenPair> eig_general_small(const Matrix& m, const GeneralEigenOptions& opts) {
  const std::size_t n = m.dim();
  std::vector<Complex> values = eigenvalues_general(m, opts);
  std::sort(values.begin(), values.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });

  double radius = 1.0;
  for (const auto& v : values) radius = std::max(radius, std::abs(v));
  const double group_tol = opts.degeneracy * radius;
  const double mnorm = std::max(m.frobenius_norm(), 1e-300);

  // Cluster by proximity (single linkage over the sorted list plus a full scan).
  std::vector<int> cluster(n, -1);
  int nclusters = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (cluster[i] >= 0) continue;
    cluster[i] = nclusters;
    for (std::size_t j = i + 1; j < n; ++j)
      if (cluster[j] < 0 && std::abs(values[j] - values[i]) <= group_tol) cluster[j] = nclusters;
    ++nclusters;
  }

  std::vector<EigenPair> pairs;
  pairs.reserve(n);
  for (int cl = 0; cl < nclusters; ++cl) {
    Complex centre = 0.0;
    std::size_t mult = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (cluster[i] == cl) {
        centre += values[i];
        ++mult;
      }
    centre /= static_cast<double>(mult);

    Matrix shifted = m - centre * Matrix::identity(n);
    const HermitianOperator gram = HermitianOperator::symmetrized(shifted.adjoint() * shifted);
    const SpectralDecomposition d = spectral_decompose(gram);
    for (std::size_t k = 0; k < mult; ++k) {
      StateVector v(n);
      for (std::size_t r = 0; r < n; ++r) v[r] = d.eigenvectors(r, k);
      const double res = (shifted * v).norm();
      if (res > opts.tol * mnorm) {
        std::ostringstream os;
        os << "defective eigenvalue " << centre << ": algebraic multiplicity " << mult
           << " but null-space vector " << k << " has residual " << res;
        throw StructureError(os.str());
      }
      const Complex rq = inner(v, m * v);
      pairs.push_back({rq, v});
    }
  }

  // Eigenvectors of distinct clusters must be linearly independent.
  Matrix basis(n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t r = 0; r < n; ++r) basis(r, k) = pairs[k].vector[r];
  const auto gd = spectral_decompose(HermitianOperator::symmetrized(basis.adjoint() * basis));
  if (gd.eigenvalues.front() < 1e-12) {
    throw StructureError("matrix is defective: eigenvectors are linearly dependent");
  }

  std::stable_sort(pairs.begin(), pairs.end(), [](const EigenPair& a, const EigenPair& b) {
    return a.value.real() != b.value.real() ? a.value.real() < b.value.real()
                                            : a.value.imag() < b.value.imag();
  });
  return pairs;
}

}  // namespace darboux
