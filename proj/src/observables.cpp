#include "darboux/observables.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "darboux/errors.hpp"

namespace darboux {

Matrix position_operator(std::size_t n_levels) {
  Matrix x(n_levels);
  for (std::size_t n = 0; n + 1 < n_levels; ++n) {
    const double v = std::sqrt((static_cast<double>(n) + 1.0) / 2.0);
    x(n, n + 1) = v;
    x(n + 1, n) = v;
  }
  return x;
}

Matrix embed_levels(const Matrix& rho, std::size_t n_levels, std::size_t first_level) {
  if (first_level + rho.dim() > n_levels) {
    throw ParameterError("embed_levels: n_levels too small for the operator");
  }
  Matrix out(n_levels);
  for (std::size_t r = 0; r < rho.dim(); ++r)
    for (std::size_t c = 0; c < rho.dim(); ++c) out(first_level + r, first_level + c) = rho(r, c);
  return out;
}

double mean_position(const HermitianOperator& rho, std::size_t n_levels, std::size_t first_level) {
  if (n_levels < first_level + rho.dim() + 1) {
    throw ParameterError("mean_position: n_levels must exceed the occupied levels by one");
  }
  const Matrix x = position_operator(n_levels);
  const Matrix full = embed_levels(rho, n_levels, first_level);
  Complex num = 0.0;
  for (std::size_t r = 0; r < n_levels; ++r)
    for (std::size_t c = 0; c < n_levels; ++c) num += x(r, c) * full(c, r);
  return num.real() / rho.trace();
}

std::vector<double> hermite_functions(std::size_t count, double x) {
  std::vector<double> psi(count);
  if (count == 0) return psi;
  psi[0] = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * x * x);
  if (count > 1) psi[1] = std::numbers::sqrt2 * x * psi[0];
  for (std::size_t n = 1; n + 1 < count; ++n) {
    const double nn = static_cast<double>(n);
    psi[n + 1] = std::sqrt(2.0 / (nn + 1.0)) * x * psi[n] - std::sqrt(nn / (nn + 1.0)) * psi[n - 1];
  }
  return psi;
}

DensityProfile position_density(const HermitianOperator& rho, std::span<const double> x_grid,
                                std::size_t n_levels, std::size_t first_level) {
  if (x_grid.empty()) throw ParameterError("position_density: empty grid");
  if (n_levels < first_level + rho.dim()) {
    throw ParameterError("position_density: n_levels too small for the operator");
  }
  const std::size_t d = rho.dim();
  DensityProfile out;
  out.density.resize(x_grid.size());
  for (std::size_t i = 0; i < x_grid.size(); ++i) {
    const auto psi = hermite_functions(first_level + d, x_grid[i]);
    Complex s = 0.0;
    for (std::size_t m = 0; m < d; ++m)
      for (std::size_t n = 0; n < d; ++n)
        s += psi[first_level + m] * rho.matrix()(m, n) * psi[first_level + n];
    out.max_imaginary = std::max(out.max_imaginary, std::abs(s.imag()));
    out.most_negative = std::min(out.most_negative, s.real());
    out.density[i] = (s.real() < 0.0 && s.real() > -1e-10) ? 0.0 : s.real();
  }
  return out;
}

double trapezoid(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DimensionMismatch("trapezoid: x and y differ in length");
  double s = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) s += 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
  return s;
}

}  // namespace darboux
