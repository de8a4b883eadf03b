#include <atomic>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "doctest.h"

#include "darboux/block.hpp"
#include "darboux/errors.hpp"
#include "darboux/scattering.hpp"
#include "darboux/seed.hpp"
#include "darboux/sweeps.hpp"

using namespace darboux;

TEST_CASE("linspace") {
  const auto v = linspace(-1, 1, 5);
  CHECK(v.front() == -1.0);
  CHECK(v.back() == 1.0);
  CHECK(v[2] == 0.0);
  CHECK(linspace(3, 4, 1).size() == 1);
  CHECK(linspace(3, 4, 0).empty());
}

TEST_CASE("for_each_index visits every index once and rethrows") {
  for (auto exec : {Execution::Serial, Execution::Parallel}) {
    std::vector<std::atomic<int>> hits(1000);
    for_each_index(1000, [&](std::size_t i) { hits[i]++; }, exec);
    for (auto& h : hits) CHECK(h.load() == 1);
    CHECK_THROWS_AS(for_each_index(
                        50,
                        [](std::size_t i) {
                          if (i == 7) throw ParameterError("seven");
                        },
                        exec),
                    ParameterError);
  }
  CHECK(max_threads() >= 1);
}

TEST_CASE("figure1 table: parallel equals serial") {
  const double qs[] = {1.0, std::numbers::sqrt2, std::numbers::pi, -2.0};
  const auto ts = linspace(-20, 20, 81);
  const auto s = figure1_table(qs, 1.0, ts, 4, Execution::Serial);
  const auto p = figure1_table(qs, 1.0, ts, 4, Execution::Parallel);
  CHECK(s == p);
  // row at t = 0 identical across q
  const auto& r0 = s[40];
  for (double v : r0) CHECK(std::abs(v - r0[0]) <= 1e-12);
}

TEST_CASE("figure2 grid: parallel equals serial and properties") {
  const auto ts = linspace(-60, 60, 25);
  const auto xs = linspace(-6, 6, 121);
  const auto s = figure2_grid(0.5, 0.5, ts, xs, 0, Execution::Serial);
  const auto p = figure2_grid(0.5, 0.5, ts, xs, 0, Execution::Parallel);
  CHECK(s.density == p.density);
  CHECK(s.slice_integral == p.slice_integral);
  CHECK(s.min_density >= -1e-10);
  for (double v : s.slice_integral) CHECK(std::abs(v - 4.75) < 1e-3);
  CHECK(s.at(3, 60) == s.density[3 * 121 + 60]);
  const std::vector<double> none;
  CHECK_THROWS_AS(figure2_grid(0.5, 0.5, none, xs, 0, Execution::Serial), ParameterError);
}

TEST_CASE("spectrum and residual sweeps") {
  const auto b = build_three_level_seed(2.0, 1.0);
  const SelfScatteringSolution sol(b);
  const auto rho = [&](double t) { return sol.rho1(t).matrix(); };
  const auto ts = linspace(-10, 10, 41);
  const auto s = spectrum_sweep(rho, ts, Execution::Serial);
  const auto p = spectrum_sweep(rho, ts, Execution::Parallel);
  CHECK(s == p);
  for (const auto& e : s) CHECK(std::abs(e[1] - 1.75) < 1e-9);
  const auto rs = residual_sweep(rho, b.h, b.f, ts, 1e-4, Execution::Serial);
  const auto rp = residual_sweep(rho, b.h, b.f, ts, 1e-4, Execution::Parallel);
  CHECK(rs == rp);
  for (double r : rs) CHECK(r < 1e-5);

  const BlockSolution blk(BlockModel::with_defaults(8, 0.7, 1.0, NonlinearityQ::power(2.0 / 3.0, true)));
  const auto br = [&](double t) { return blk.rho1_closed_form(t).matrix(); };
  CHECK(spectrum_sweep(br, ts, Execution::Serial) == spectrum_sweep(br, ts, Execution::Parallel));
}
