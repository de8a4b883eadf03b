#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "darboux/hermitian.hpp"

namespace darboux {

/// Position operator (a + a^dagger)/sqrt 2 truncated to n_levels oscillator states.
Matrix position_operator(std::size_t n_levels);

/// Embed rho on levels [first_level, first_level + dim) of an n_levels basis.
Matrix embed_levels(const Matrix& rho, std::size_t n_levels, std::size_t first_level = 0);

/// <x> = Tr(x rho) / Tr rho, rho placed at `first_level`.
/// Requires n_levels >= first_level + dim + 1.
double mean_position(const HermitianOperator& rho, std::size_t n_levels,
                     std::size_t first_level = 0);

/// psi_0(x) .. psi_{count-1}(x) by the stable three-term recurrence.
std::vector<double> hermite_functions(std::size_t count, double x);

struct DensityProfile {
  std::vector<double> density;
  double max_imaginary = 0.0;     // largest |Im| discarded
  double most_negative = 0.0;     // smallest value seen (clipped to 0 if > -1e-10)
};

/// <x|rho|x> on a grid; rho placed at `first_level` in an n_levels basis.
/// Throws ParameterError for an empty grid or n_levels too small.
DensityProfile position_density(const HermitianOperator& rho, std::span<const double> x_grid,
                                std::size_t n_levels, std::size_t first_level = 0);

/// Trapezoid rule on a (possibly non-uniform) grid.
double trapezoid(std::span<const double> x, std::span<const double> y);

}  // namespace darboux
