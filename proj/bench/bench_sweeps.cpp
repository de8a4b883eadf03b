// Serial vs OpenMP timing of the sweep kernels; also checks the outputs agree.
// usage: bench_sweeps [repeats]

#include <chrono>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include "darboux/block.hpp"
#include "darboux/scattering.hpp"
#include "darboux/seed.hpp"
#include "darboux/sweeps.hpp"

using namespace darboux;

namespace {

template <class F>
double best_seconds(int repeats, F&& body) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    body();
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
    best = std::min(best, dt.count());
  }
  return best;
}

template <class Out, class Run>
void report(const std::string& name, int repeats, Run&& run) {
  Out serial, parallel;
  const double ts = best_seconds(repeats, [&] { serial = run(Execution::Serial); });
  const double tp = best_seconds(repeats, [&] { parallel = run(Execution::Parallel); });
  std::cout << std::left << std::setw(16) << name << std::right << std::fixed << std::setprecision(4)
            << std::setw(10) << ts << std::setw(10) << tp << std::setw(9) << std::setprecision(2)
            << ts / tp << "x" << std::setw(10) << (serial == parallel ? "yes" : "NO") << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  const int repeats = argc > 1 ? std::max(1, std::atoi(argv[1])) : 3;
  std::cout << "threads: " << max_threads() << ", best of " << repeats << "\n";
  std::cout << std::left << std::setw(16) << "kernel" << std::right << std::setw(10) << "serial[s]"
            << std::setw(10) << "omp[s]" << std::setw(10) << "speedup" << std::setw(10) << "identical"
            << '\n';

  const std::vector<double> qs{1.0, std::numbers::sqrt2, std::numbers::pi, -2.0};
  const auto t1 = linspace(-20.0, 20.0, 4001);
  report<std::vector<std::vector<double>>>("figure1_table", repeats, [&](Execution e) {
    return figure1_table(qs, 1.0, t1, 4, e);
  });

  const auto t2 = linspace(-60.0, 60.0, 241);
  const auto xs = linspace(-6.0, 6.0, 481);
  report<std::vector<double>>("figure2_grid", repeats, [&](Execution e) {
    return figure2_grid(0.5, 0.5, t2, xs, 0, e).density;
  });

  const SelfScatteringSolution sol(build_three_level_seed(0.5, 1.0));
  const auto t3 = linspace(-60.0, 60.0, 4001);
  report<std::vector<std::vector<double>>>("spectrum_sweep", repeats, [&](Execution e) {
    return spectrum_sweep([&](double t) { return sol.rho1(t).matrix(); }, t3, e);
  });

  const BlockSolution blk(BlockModel::with_defaults(16, 0.7, 1.0, NonlinearityQ::power(2.0 / 3.0, true)));
  const auto t4 = linspace(-5.0, 5.0, 201);
  report<std::vector<double>>("residual_block", repeats, [&](Execution e) {
    return residual_sweep([&](double t) { return blk.rho1_closed_form(t).matrix(); },
                          blk.operators().h, blk.model().f(), t4, 1e-4, e);
  });
  return 0;
}
