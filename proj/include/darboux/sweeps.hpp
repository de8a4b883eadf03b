#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "darboux/hermitian.hpp"
#include "darboux/nonlinearity.hpp"

namespace darboux {

/// Serial is the reference; Parallel distributes independent samples over
/// OpenMP threads and writes results into preallocated slots, so both give
/// bit-identical output.
enum class Execution { Serial, Parallel };

/// Runs body(i) for i in [0, n). Exceptions from any iteration are rethrown
/// (the one with the smallest index).
void for_each_index(std::size_t n, const std::function<void(std::size_t)>& body, Execution exec);

/// Number of OpenMP threads the Parallel path would use (1 without OpenMP).
int max_threads();

/// rows[i][j] = <x>(times[i]) for qs[j] of the explicit three-level solution,
/// normalized by Tr rho1, in an n_levels oscillator basis.
std::vector<std::vector<double>> figure1_table(std::span<const double> qs, double omega,
                                               std::span<const double> times,
                                               std::size_t n_levels, Execution exec);

struct DensityGrid {
  std::vector<double> times;
  std::vector<double> xs;
  std::vector<double> density;       // row-major [time][x]
  std::vector<double> slice_integral; // trapezoid over x per time
  double min_density = 0.0;
  double max_imaginary = 0.0;

  double at(std::size_t it, std::size_t ix) const { return density[it * xs.size() + ix]; }
};

/// <x|rho1(t)|x> of the explicit three-level solution placed on levels
/// level_shift .. level_shift+2.
DensityGrid figure2_grid(double q, double omega, std::span<const double> times,
                         std::span<const double> xs, std::size_t level_shift, Execution exec);

using MatrixOfT = std::function<Matrix(double)>;

/// Sorted eigenvalues of rho(t) per sample; rho_of_t must be safe to call concurrently.
std::vector<std::vector<double>> spectrum_sweep(const MatrixOfT& rho_of_t,
                                                std::span<const double> times, Execution exec);

/// || i (rho(t+h) - rho(t-h))/2h - [H, f(rho(t))] ||_F per sample.
std::vector<double> residual_sweep(const MatrixOfT& rho_of_t, const HermitianOperator& h,
                                   const NonlinearityQ& f, std::span<const double> times,
                                   double step, Execution exec);

/// n evenly spaced points on [a, b] (n == 1 gives {a}).
std::vector<double> linspace(double a, double b, std::size_t n);

}  // namespace darboux
