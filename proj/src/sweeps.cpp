#include "darboux/sweeps.hpp"

#include <algorithm>
#include <exception>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "darboux/errors.hpp"
#include "darboux/observables.hpp"
#include "darboux/oracle.hpp"
#include "darboux/scattering.hpp"

namespace darboux {

void for_each_index(std::size_t n, const std::function<void(std::size_t)>& body, Execution exec) {
  if (exec == Execution::Serial) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(n);
  const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 1)
  for (long long i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

std::vector<std::vector<double>> figure1_table(std::span<const double> qs, double omega,
                                               std::span<const double> times,
                                               std::size_t n_levels, Execution exec) {
  std::vector<std::vector<double>> rows(times.size(), std::vector<double>(qs.size()));
  const std::size_t cells = times.size() * qs.size();
  for_each_index(
      cells,
      [&](std::size_t c) {
        const std::size_t i = c / qs.size();
        const std::size_t j = c % qs.size();
        rows[i][j] = mean_position(rho1_explicit(qs[j], omega, times[i]), n_levels);
      },
      exec);
  return rows;
}

DensityGrid figure2_grid(double q, double omega, std::span<const double> times,
                         std::span<const double> xs, std::size_t level_shift, Execution exec) {
  if (times.empty() || xs.empty()) throw ParameterError("figure2_grid: empty grid");
  DensityGrid g;
  g.times.assign(times.begin(), times.end());
  g.xs.assign(xs.begin(), xs.end());
  g.density.assign(times.size() * xs.size(), 0.0);
  g.slice_integral.assign(times.size(), 0.0);
  std::vector<double> mins(times.size());
  std::vector<double> imags(times.size());
  const std::size_t n_levels = level_shift + 3;
  for_each_index(
      times.size(),
      [&](std::size_t i) {
        const auto prof =
            position_density(rho1_explicit(q, omega, times[i]), xs, n_levels, level_shift);
        std::copy(prof.density.begin(), prof.density.end(), g.density.begin() + i * xs.size());
        g.slice_integral[i] = trapezoid(xs, prof.density);
        mins[i] = prof.most_negative;
        imags[i] = prof.max_imaginary;
      },
      exec);
  g.min_density = *std::min_element(mins.begin(), mins.end());
  g.max_imaginary = *std::max_element(imags.begin(), imags.end());
  return g;
}

std::vector<std::vector<double>> spectrum_sweep(const MatrixOfT& rho_of_t,
                                                std::span<const double> times, Execution exec) {
  std::vector<std::vector<double>> out(times.size());
  for_each_index(
      times.size(),
      [&](std::size_t i) {
        out[i] = spectral_decompose(HermitianOperator::symmetrized(rho_of_t(times[i]))).eigenvalues;
      },
      exec);
  return out;
}

std::vector<double> residual_sweep(const MatrixOfT& rho_of_t, const HermitianOperator& h,
                                   const NonlinearityQ& f, std::span<const double> times,
                                   double step, Execution exec) {
  std::vector<double> out(times.size());
  for_each_index(
      times.size(),
      [&](std::size_t i) { out[i] = residual_meter(rho_of_t, h, f, times[i], step); }, exec);
  return out;
}

std::vector<double> linspace(double a, double b, std::size_t n) {
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = a;
    return out;
  }
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  if (n > 0) out[n - 1] = b;
  return out;
}

}  // namespace darboux
