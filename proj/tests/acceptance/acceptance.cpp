// Acceptance suite: one PASS/FAIL line per criterion.
// usage: acceptance [N ...]   (no arguments runs 1..10)

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "darboux/block.hpp"
#include "darboux/eig_general.hpp"
#include "darboux/errors.hpp"
#include "darboux/lax.hpp"
#include "darboux/observables.hpp"
#include "darboux/oracle.hpp"
#include "darboux/scattering.hpp"
#include "darboux/seed.hpp"
#include "darboux/sweeps.hpp"

using namespace darboux;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

const std::vector<double> kQs{-2.0, 0.5, std::numbers::sqrt2, 2.0, std::numbers::pi};
const double kSqrt3 = std::sqrt(3.0);

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

std::string fmt(Complex z) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f%+.6fi", z.real(), z.imag());
  return buf;
}

// Greedy matching of two multisets of complex numbers; returns max distance.
double multiset_distance(std::vector<Complex> got, std::vector<Complex> want) {
  if (got.size() != want.size()) return INFINITY;
  double worst = 0.0;
  for (const Complex& w : want) {
    auto best = std::min_element(got.begin(), got.end(), [&](Complex a, Complex b) {
      return std::abs(a - w) < std::abs(b - w);
    });
    worst = std::max(worst, std::abs(*best - w));
    got.erase(best);
  }
  return worst;
}

double sorted_distance(std::vector<double> got, std::vector<double> want) {
  if (got.size() != want.size()) return INFINITY;
  std::sort(got.begin(), got.end());
  std::sort(want.begin(), want.end());
  double worst = 0.0;
  for (std::size_t i = 0; i < got.size(); ++i) worst = std::max(worst, std::abs(got[i] - want[i]));
  return worst;
}

double max_of(const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); }

Outcome criterion1() {
  const double omega = 1.0;
  const Matrix m = three_level_rho0().matrix() - three_level_mu(omega) * three_level_hamiltonian(omega).matrix();
  const auto got = eigenvalues_general(m);
  const Complex s(0.0, kSqrt3 / 4);
  const double stated = multiset_distance(got, {1.25 + s, 1.75 + s, 1.75 + s});
  const double conj = multiset_distance(got, {1.25 - s, 1.75 - s, 1.75 - s});
  const double rho_dev =
      sorted_distance(spectral_decompose(three_level_rho0()).eigenvalues, {1.0, 1.75, 2.0});
  std::vector<std::string> parts;
  for (const auto& z : got) parts.push_back(fmt(z));
  std::ostringstream d;
  d << "rho(0)-mu*H eigenvalues {" << parts[0] << ", " << parts[1] << ", " << parts[2]
    << "}; deviation from stated set " << fmt(stated) << " (tol 1e-10), from its conjugate "
    << fmt(conj) << "; stated signs belong to rho(0)-conj(mu)*H; rho(0) spectrum deviation "
    << fmt(rho_dev) << " (tol 1e-12)";
  return {stated <= 1e-10 && rho_dev <= 1e-12, d.str()};
}

Outcome criterion2() {
  double worst = 0.0;
  for (double q : kQs) {
    const auto d = delta_a(three_level_rho0(), NonlinearityQ::shifted_power(q), 1.0);
    const double mid = -2.0 + 0.25 * (1.0 - std::pow(4.0 / 7.0, 1.0 - q));
    worst = std::max(worst, sorted_distance(spectral_decompose(d).eigenvalues, {-2.0, mid, -2.0}));
  }
  return {worst <= 1e-12, "max eigenvalue deviation " + fmt(worst) + " (tol 1e-12)"};
}

Outcome criterion3() {
  const double omega = 1.0;
  const auto ts = linspace(-60.0, 60.0, 41);
  double gen = 0.0, at0 = 0.0;
  for (double q : kQs) {
    const SeedBundle b = build_three_level_seed(q, omega);
    const SelfScatteringSolution sol(b);
    for (double t : ts) gen = std::max(gen, distance(sol.rho1(t), rho1_explicit(q, omega, t)));
    const Matrix d0 = dress_rho(b.rho0, b.h, make_projector(b.phi0, b.phi0), b.mu, std::conj(b.mu));
    at0 = std::max({at0, distance(d0, sol.rho1(0.0)), distance(d0, rho1_explicit(q, omega, 0.0))});
  }
  return {gen <= 1e-9 && at0 <= 1e-9,
          "general vs explicit " + fmt(gen) + ", dress_rho at t=0 " + fmt(at0) + " (tol 1e-9)"};
}

Outcome criterion4() {
  const double omega = 1.0, h = 1e-4;
  const auto ts = linspace(-10.0, 10.0, 21);
  double worst = 0.0, min_ratio = INFINITY;
  for (double q : kQs) {
    const SeedBundle b = build_three_level_seed(q, omega);
    const SelfScatteringSolution sol(b);
    const auto eval = [&](double t) { return sol.rho1(t).matrix(); };
    const auto r1 = residual_sweep(eval, b.h, b.f, ts, h, Execution::Parallel);
    const auto r2 = residual_sweep(eval, b.h, b.f, ts, h / 2, Execution::Parallel);
    worst = std::max(worst, max_of(r1));
    min_ratio = std::min(min_ratio, max_of(r1) / max_of(r2));
  }
  return {worst <= 1e-5 && min_ratio >= 3.5,
          "max residual " + fmt(worst) + " (tol 1e-5), min halving ratio " + fmt(min_ratio) +
              " (need >= 3.5)"};
}

Outcome criterion5() {
  const double omega = 1.0;
  double worst = 0.0;
  for (double q : {0.5, 2.0}) {
    const SeedBundle b = build_three_level_seed(q, omega);
    const SelfScatteringSolution sol(b);
    const auto end = integrate_to(sol.rho1(-10.0), b.h, b.f, -10.0, 10.0, 1e-3);
    worst = std::max(worst, distance(end, sol.rho1(10.0)));
  }
  return {worst <= 1e-5, "max |RK4 - closed form| at t=10: " + fmt(worst) + " (tol 1e-5)"};
}

Outcome criterion6() {
  const double omega = 1.0;
  const auto ts = linspace(-60.0, 60.0, 241);
  double spec = 0.0, tr = 0.0;
  for (double q : kQs) {
    const SelfScatteringSolution sol(build_three_level_seed(q, omega));
    const auto eval = [&](double t) { return sol.rho1(t).matrix(); };
    for (const auto& ev : spectrum_sweep(eval, ts, Execution::Parallel))
      spec = std::max(spec, sorted_distance(ev, {1.0, 1.75, 2.0}));
    for (double t : ts) tr = std::max(tr, std::abs(sol.rho1(t).trace() - 4.75));
  }
  return {spec <= 1e-9 && tr <= 1e-9,
          "spectrum drift " + fmt(spec) + ", trace drift " + fmt(tr) + " (tol 1e-9)"};
}

Outcome criterion7() {
  const double omega = 1.0;
  bool ok = true;
  std::ostringstream d;
  for (double q : {2.0, 0.5}) {
    const double wq = omega_q(q, omega);
    const double big_t = 20.0 / std::abs(wq);
    const auto prof = ScatteringProfile::make(q, omega);
    const double xi = std::max(std::abs(prof.xi(big_t)), std::abs(prof.xi(-big_t)));
    const Complex limit = q > 1 ? Complex(-0.5, 0.0) : Complex(0.25, -kSqrt3 / 4);
    const double zeta = std::abs(prof.zeta(big_t) - limit);
    const double sigma = q > 1 ? 1.0 : -1.0;
    const double ret = distance(rho1_explicit(q, omega, sigma * big_t), seed_explicit(omega, sigma * big_t));
    ok = ok && xi <= 1e-7 && zeta <= 1e-7 && ret <= 1e-6;
    d << "q=" << q << ": |xi| " << fmt(xi) << ", zeta " << fmt(zeta) << ", seed return " << fmt(ret)
      << "; ";
  }
  d << "tol 1e-7/1e-7/1e-6";
  return {ok, d.str()};
}

Outcome criterion8() {
  const double omega = 1.0;
  const std::size_t levels = 4;
  const std::vector<double> qs{1.0, std::numbers::sqrt2, std::numbers::pi, -2.0};
  const auto ts = linspace(-20.0, 20.0, 41);
  const auto rows = figure1_table(qs, omega, ts, levels, Execution::Parallel);
  const auto& r0 = rows[20];
  double spread = 0.0;
  for (double v : r0) spread = std::max(spread, std::abs(v - r0[0]));

  const auto h = three_level_hamiltonian(omega);
  const auto lin = NonlinearityQ::shifted_power(1.0);
  const auto start = rho1_explicit(1.0, omega, 0.0);
  double lin_dev = 0.0;
  for (std::size_t i = 0; i < ts.size(); i += 5) {
    if (ts[i] == 0.0) continue;
    const auto state = integrate_to(start, h, lin, 0.0, ts[i], 1e-3);
    lin_dev = std::max(lin_dev, std::abs(rows[i][0] - mean_position(state, levels)));
  }

  double decay = 0.0;
  for (double q : {std::numbers::sqrt2, std::numbers::pi}) {
    const double qv[] = {q};
    const double tv[] = {25.0 / omega_q(q, omega)};
    decay = std::max(decay, std::abs(figure1_table(qv, omega, tv, levels, Execution::Serial)[0][0]));
  }
  return {spread <= 1e-12 && lin_dev <= 1e-6 && decay <= 1e-4,
          "t=0 column spread " + fmt(spread) + " (tol 1e-12), q=1 vs linear RK4 " + fmt(lin_dev) +
              " (tol 1e-6), q>1 |<x>| at omega_q t=25 " + fmt(decay) + " (tol 1e-4)"};
}

Outcome criterion9() {
  const BlockSolution sol(BlockModel::with_defaults(8, 0.7, 1.0, NonlinearityQ::power(2.0 / 3.0, true)));
  std::vector<double> ref;
  for (double a : sol.model().a()) {
    ref.push_back(a);
    ref.push_back(-a);
  }
  const auto ts = linspace(-5.0, 5.0, 21);
  double herm = 0.0, spec = 0.0;
  for (double t : ts) {
    const Matrix m = sol.rho1_darboux(t);
    herm = std::max(herm, distance(m, m.adjoint()));
  }
  const auto eval = [&](double t) { return sol.rho1_closed_form(t).matrix(); };
  for (const auto& ev : spectrum_sweep(eval, ts, Execution::Parallel))
    spec = std::max(spec, sorted_distance(ev, ref));
  double eq = 0.0;
  for (double t : {-3.0, 0.0, 2.0}) eq = std::max(eq, distance(sol.rho1_closed_form(t), sol.rho1_darboux(t)));
  const double res = max_of(residual_sweep(eval, sol.operators().h, sol.model().f(),
                                           linspace(-2.0, 2.0, 9), 1e-4, Execution::Parallel));
  const double zero[] = {0.0};
  const double off0 = irreducibility_report(sol, zero).min_overall;
  const double late[] = {sol.asymptotic_time(40.0, +1)};
  const double off_late = irreducibility_report(sol, late).max_off_block[0];
  return {herm <= 1e-8 && spec <= 1e-8 && eq <= 1e-8 && res <= 1e-4 && off0 > 0.0 && off_late <= 1e-8,
          "hermiticity " + fmt(herm) + ", spectrum " + fmt(spec) + ", closed vs Darboux " + fmt(eq) +
              " (tol 1e-8), residual " + fmt(res) + " (tol 1e-4), min off-block at t=0 " +
              fmt(off0) + ", max off-block at t=" + fmt(late[0]) + " " + fmt(off_late) +
              " (tol 1e-8)"};
}

Outcome criterion10() {
  const double q = 0.5, omega = 0.5;
  const auto ts = linspace(-60.0, 60.0, 241);
  const auto xs = linspace(-6.0, 6.0, 481);
  const DensityGrid g = figure2_grid(q, omega, ts, xs, 0, Execution::Parallel);
  double integral = 0.0;
  for (double s : g.slice_integral) integral = std::max(integral, std::abs(s - 4.75));
  const auto r = [&](double t) { return rho_int_explicit(q, omega, t); };
  const double jump = distance(r(-55.0), r(55.0));
  const double neigh = std::max(distance(r(-55.0), r(-55.5)), distance(r(55.0), r(55.5)));
  return {g.min_density >= -1e-10 && integral <= 1e-4 && jump > 0.5 && neigh <= 1e-3,
          "min density " + fmt(g.min_density) + " (>= -1e-10), slice integral deviation " +
              fmt(integral) + " (tol 1e-4), |r(-55)-r(55)| " + fmt(jump) +
              " (> 0.5), neighbouring slices " + fmt(neigh) + " (tol 1e-3)"};
}

const std::vector<std::pair<std::string, std::function<Outcome()>>> kCriteria{
    {"eigenvalue reproduction", criterion1},
    {"Delta_1 formula", criterion2},
    {"closed-form consistency", criterion3},
    {"PDE residual", criterion4},
    {"RK4 oracle", criterion5},
    {"isospectrality and trace", criterion6},
    {"asymptotics", criterion7},
    {"figure 1 properties", criterion8},
    {"block model", criterion9},
    {"figure 2 data", criterion10},
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::size_t> which;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "all") continue;
    std::size_t n = 0;
    try {
      n = std::stoul(arg);
    } catch (const std::exception&) {
      n = 0;
    }
    if (n < 1 || n > kCriteria.size()) {
      std::cerr << "usage: acceptance [1-" << kCriteria.size() << " | all]...\n";
      return 2;
    }
    which.push_back(n);
  }
  if (which.empty())
    for (std::size_t n = 1; n <= kCriteria.size(); ++n) which.push_back(n);

  bool all = true;
  for (std::size_t n : which) {
    const auto& [name, run] = kCriteria[n - 1];
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << "criterion " << n << " [" << name << "]: " << (o.pass ? "PASS" : "FAIL") << "  "
              << o.detail << std::endl;
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
