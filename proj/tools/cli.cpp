#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "darboux/block.hpp"
#include "darboux/errors.hpp"
#include "darboux/lax.hpp"
#include "darboux/matrix_io.hpp"
#include "darboux/observables.hpp"
#include "darboux/oracle.hpp"
#include "darboux/scattering.hpp"
#include "darboux/seed.hpp"
#include "darboux/seed_io.hpp"
#include "darboux/sweeps.hpp"

#ifndef DARBOUX_VERSION
#define DARBOUX_VERSION "dev"
#endif

namespace darboux::cli {

namespace {

using nlohmann::ordered_json;

struct Options {
  std::string command;
  std::vector<double> q;
  double omega = 1.0;
  std::optional<double> t_min;
  std::optional<double> t_max;
  std::optional<std::size_t> t_samples;
  double dt = 1e-3;
  double fd_step = 1e-4;
  double tol = 1e-9;
  std::optional<std::size_t> k;
  std::string out;
  bool manifest = false;
  std::size_t level_shift = 0;
  std::string scenario = "three-level";
  std::string seed;
  double x_min = -6.0;
  double x_max = 6.0;
  std::size_t x_samples = 481;
  double alpha = 0.7;
  double beta = 1.0;
  std::size_t n_levels = 4;
  std::string rho;
  std::string hamiltonian;
  std::string phi;
  std::string chi;
  std::string mu;
  std::string nu;
  bool serial = false;
};

// Input problems that should map to exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TimeGrid {
  double t_min;
  double t_max;
  std::size_t samples;
};

TimeGrid grid(const Options& o, double lo, double hi, std::size_t n) {
  TimeGrid g{o.t_min.value_or(lo), o.t_max.value_or(hi), o.t_samples.value_or(n)};
  if (!(g.t_max > g.t_min)) throw InputError("t range is empty: need t-max > t-min");
  if (g.samples < 2) throw InputError("t-samples must be at least 2");
  return g;
}

Execution exec_of(const Options& o) { return o.serial ? Execution::Serial : Execution::Parallel; }

std::vector<double> q_list(const Options& o, std::vector<double> fallback) {
  return o.q.empty() ? fallback : o.q;
}

void require_nonlinear(const std::vector<double>& qs) {
  for (double q : qs) {
    if (q == 1.0) throw InputError("q = 1 is the linear case; it is only accepted by figure1 and seed-check");
  }
}

class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) {
    if (path.empty()) {
      os_ = &fallback;
    } else {
      file_.open(path);
      if (!file_) throw InputError("cannot write '" + path + "'");
      os_ = &file_;
    }
  }
  std::ostream& stream() { return *os_; }

 private:
  std::ofstream file_;
  std::ostream* os_;
};

void write_json_file(const std::string& path, const ordered_json& j) {
  std::ofstream f(path);
  if (!f) throw InputError("cannot write '" + path + "'");
  f << j.dump(2) << '\n';
}

// Checks collected by verify-style commands.
class CheckList {
 public:
  void at_most(const std::string& name, double value, double threshold, ordered_json context = {}) {
    add(name, value, threshold, "<=", value <= threshold, std::move(context));
  }
  void at_least(const std::string& name, double value, double threshold, ordered_json context = {}) {
    add(name, value, threshold, ">=", value >= threshold, std::move(context));
  }
  void greater(const std::string& name, double value, double threshold, ordered_json context = {}) {
    add(name, value, threshold, ">", value > threshold, std::move(context));
  }
  bool all() const { return pass_; }
  const ordered_json& json() const { return items_; }
  void merge(const CheckList& other) {
    for (const auto& c : other.items_) items_.push_back(c);
    pass_ = pass_ && other.pass_;
  }

 private:
  void add(const std::string& name, double value, double threshold, const char* rel, bool ok,
           ordered_json context) {
    ordered_json c;
    c["name"] = name;
    if (!context.is_null()) {
      for (auto it = context.begin(); it != context.end(); ++it) c[it.key()] = it.value();
    }
    c["value"] = std::isfinite(value) ? ordered_json(value) : ordered_json(std::to_string(value));
    c["relation"] = rel;
    c["threshold"] = threshold;
    c["pass"] = ok;
    items_.push_back(std::move(c));
    pass_ = pass_ && ok;
  }

  ordered_json items_ = ordered_json::array();
  bool pass_ = true;
};

ordered_json matrix_json(const Matrix& m) {
  ordered_json rows = ordered_json::array();
  for (std::size_t r = 0; r < m.dim(); ++r) {
    ordered_json row = ordered_json::array();
    for (std::size_t c = 0; c < m.dim(); ++c) row.push_back(format_complex(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

double max_spectrum_drift(const std::vector<std::vector<double>>& spectra,
                          const std::vector<double>& reference) {
  double d = 0.0;
  for (const auto& s : spectra)
    for (std::size_t i = 0; i < s.size(); ++i) d = std::max(d, std::abs(s[i] - reference[i]));
  return d;
}

// ---------------------------------------------------------------- seed-check

int cmd_seed_check(const Options& o, std::ostream& out) {
  HermitianOperator rho, h;
  NonlinearityQ f = NonlinearityQ::power(1.0);
  double a = 1.0;
  ordered_json report;
  if (!o.seed.empty()) {
    const KeyValueDoc doc = load_key_values(o.seed);
    rho = HermitianOperator(doc.get_matrix("rho0"));
    h = HermitianOperator(doc.get_matrix("H"));
    if (rho.dim() != h.dim()) throw DimensionMismatch("rho0 and H differ in dimension");
    f = read_nonlinearity(doc);
    a = doc.get_real("a", 1.0);
    report["source"] = o.seed;
  } else {
    if (o.q.size() > 1) throw InputError("seed-check takes a single q");
    const double q = o.q.empty() ? 0.5 : o.q.front();
    if (!(o.omega > 0.0)) throw InputError("omega must be positive");
    rho = three_level_rho0();
    h = three_level_hamiltonian(o.omega, static_cast<int>(o.level_shift));
    f = NonlinearityQ::shifted_power(q);
    report["source"] = "three-level";
    report["q"] = q;
    report["omega"] = o.omega;
  }
  report["f"] = f.describe();
  report["a"] = a;
  const SeedReport r = validate_seed(rho, h, f, a);
  report["commutes"] = r.commutes;
  report["nontrivial_delta"] = r.nontrivial_delta;
  report["noncommuting_rho"] = r.noncommuting_rho;
  report["delta_commutator_norm"] = r.delta_commutator_norm;
  report["delta_spread"] = r.delta_spread;
  report["rho_commutator_norm"] = r.rho_commutator_norm;
  report["pass"] = r.all();
  Sink sink(o.out, out);
  sink.stream() << report.dump(2) << '\n';
  return r.all() ? kExitPass : kExitFail;
}

// ---------------------------------------------------------------- figure1

int cmd_figure1(const Options& o, std::ostream& out) {
  const auto qs = q_list(o, {1.0, std::numbers::sqrt2, std::numbers::pi, -2.0});
  const TimeGrid g = grid(o, -20.0, 20.0, 401);
  if (!(o.omega > 0.0)) throw InputError("omega must be positive");
  const auto ts = linspace(g.t_min, g.t_max, g.samples);
  const auto rows = figure1_table(qs, o.omega, ts, o.n_levels, exec_of(o));
  Sink sink(o.out, out);
  auto& os = sink.stream();
  os << "t";
  for (double q : qs) os << ",q=" << format_real(q);
  os << '\n';
  for (std::size_t i = 0; i < ts.size(); ++i) {
    os << format_real(ts[i]);
    for (double v : rows[i]) os << ',' << format_real(v);
    os << '\n';
  }
  return kExitPass;
}

// ---------------------------------------------------------------- figure2

int cmd_figure2(const Options& o, std::ostream& out) {
  if (o.q.size() > 1) throw InputError("figure2 takes a single q");
  const double q = o.q.empty() ? 0.5 : o.q.front();
  require_nonlinear({q});
  const TimeGrid g = grid(o, -60.0, 60.0, 241);
  if (!(o.x_max > o.x_min) || o.x_samples < 2) throw InputError("x grid is empty");
  if (!(o.omega > 0.0)) throw InputError("omega must be positive");
  const auto ts = linspace(g.t_min, g.t_max, g.samples);
  const auto xs = linspace(o.x_min, o.x_max, o.x_samples);
  const DensityGrid d = figure2_grid(q, o.omega, ts, xs, o.level_shift, exec_of(o));
  Sink sink(o.out, out);
  auto& os = sink.stream();
  os << "t,x,density\n";
  for (std::size_t i = 0; i < ts.size(); ++i)
    for (std::size_t j = 0; j < xs.size(); ++j)
      os << format_real(ts[i]) << ',' << format_real(xs[j]) << ',' << format_real(d.at(i, j)) << '\n';
  if (!o.out.empty()) {
    ordered_json s;
    s["q"] = q;
    s["omega"] = o.omega;
    s["level_shift"] = o.level_shift;
    s["min_density"] = d.min_density;
    s["max_imaginary"] = d.max_imaginary;
    double drift = 0.0;
    for (double v : d.slice_integral) drift = std::max(drift, std::abs(v - 4.75));
    s["max_slice_integral_error"] = drift;
    s["slice_integral"] = d.slice_integral;
    write_json_file(o.out + ".json", s);
  }
  return kExitPass;
}

// ---------------------------------------------------------------- infdim

BlockModel block_model_of(const Options& o) {
  if (!o.seed.empty()) return read_block_model(load_key_values(o.seed));
  return BlockModel::with_defaults(o.k.value_or(8), o.alpha, o.beta,
                                   NonlinearityQ::power(2.0 / 3.0, true));
}

CheckList infdim_checks(const BlockSolution& sol, double tol_equiv, double fd_step,
                        Execution exec, ordered_json* extra) {
  CheckList c;
  const std::size_t kk = sol.model().blocks();
  double eq = 0.0;
  for (double t : {-3.0, 0.0, 2.0}) eq = std::max(eq, distance(sol.rho1_closed_form(t), sol.rho1_darboux(t)));
  c.at_most("closed_form_vs_darboux", eq, tol_equiv, {{"K", kk}});

  std::vector<double> ref;
  for (double a : sol.model().a()) {
    ref.push_back(a);
    ref.push_back(-a);
  }
  std::sort(ref.begin(), ref.end());
  const auto ts = linspace(-5.0, 5.0, 21);
  const auto eval = [&](double t) { return sol.rho1_closed_form(t).matrix(); };
  const auto raw = [&](double t) {
    // Hermiticity measured before any symmetrization happens downstream
    return sol.rho1_darboux(t);
  };
  double herm = 0.0;
  for (double t : ts) {
    const Matrix m = raw(t);
    herm = std::max(herm, distance(m, m.adjoint()));
  }
  c.at_most("hermiticity_defect", herm, tol_equiv, {{"K", kk}});
  c.at_most("spectrum_drift", max_spectrum_drift(spectrum_sweep(eval, ts, exec), ref), tol_equiv,
            {{"K", kk}});
  const auto res = residual_sweep(eval, sol.operators().h, sol.model().f(), linspace(-2.0, 2.0, 5),
                                  fd_step, exec);
  c.at_most("pde_residual", *std::max_element(res.begin(), res.end()), 1e-4, {{"K", kk}});
  if (kk >= 2) {
    const double zero[] = {0.0};
    c.greater("min_off_block_at_0", irreducibility_report(sol, zero).min_overall, 0.0, {{"K", kk}});
    const double t_late = sol.asymptotic_time(40.0, +1);
    const double late[] = {t_late};
    c.at_most("max_off_block_asymptotic", irreducibility_report(sol, late).max_off_block[0], 1e-8,
              {{"K", kk}, {"t", t_late}});
    if (extra) (*extra)["asymptotic_time"] = t_late;
  }
  return c;
}

int cmd_infdim(const Options& o, std::ostream& out) {
  const BlockSolution sol(block_model_of(o));
  const TimeGrid g = grid(o, -3.0, 3.0, 61);
  const auto ts = linspace(g.t_min, g.t_max, g.samples);
  const auto rep = irreducibility_report(sol, ts);
  std::vector<double> ref;
  for (double a : sol.model().a()) {
    ref.push_back(a);
    ref.push_back(-a);
  }
  std::sort(ref.begin(), ref.end());
  const auto spectra = spectrum_sweep([&](double t) { return sol.rho1_closed_form(t).matrix(); }, ts,
                                      exec_of(o));
  Sink sink(o.out, out);
  auto& os = sink.stream();
  os << "t,min_off_block,max_off_block,spectrum_drift\n";
  for (std::size_t i = 0; i < ts.size(); ++i) {
    double drift = 0.0;
    for (std::size_t j = 0; j < ref.size(); ++j) drift = std::max(drift, std::abs(spectra[i][j] - ref[j]));
    os << format_real(ts[i]) << ',' << format_real(rep.min_off_block[i]) << ','
       << format_real(rep.max_off_block[i]) << ',' << format_real(drift) << '\n';
  }
  ordered_json extra;
  const CheckList checks = infdim_checks(sol, 1e-8, o.fd_step, exec_of(o), &extra);
  if (!o.out.empty()) {
    ordered_json s;
    s["K"] = sol.model().blocks();
    s["alpha"] = sol.model().alpha();
    s["beta"] = sol.model().beta();
    s["nu"] = format_complex(sol.nu());
    s["normalization_defect"] = sol.model().normalization_defect();
    s["min_off_block"] = rep.min_overall;
    s["spectrum_drift"] = max_spectrum_drift(spectra, ref);
    if (extra.contains("asymptotic_time")) s["asymptotic_time"] = extra["asymptotic_time"];
    s["checks"] = checks.json();
    s["pass"] = checks.all();
    write_json_file(o.out + ".json", s);
  }
  return checks.all() ? kExitPass : kExitFail;
}

// ---------------------------------------------------------------- verify

CheckList three_level_checks(double q, const Options& o, const TimeGrid& g) {
  CheckList c;
  const ordered_json ctx = {{"q", q}};
  const SeedBundle b = build_three_level_seed(q, o.omega);
  const SelfScatteringSolution sol(b);
  const auto ts = linspace(g.t_min, g.t_max, g.samples);
  double eq = 0.0;
  for (double t : ts) eq = std::max(eq, distance(sol.rho1(t), rho1_explicit(q, o.omega, t)));
  c.at_most("general_vs_explicit", eq, o.tol, ctx);
  const Matrix d0 = dress_rho(b.rho0, b.h, make_projector(b.phi0, b.phi0), b.mu, std::conj(b.mu));
  c.at_most("dress_rho_at_0", distance(d0, rho1_explicit(q, o.omega, 0.0)), o.tol, ctx);

  const std::vector<double> ref{1.0, 1.75, 2.0};
  const auto eval = [&](double t) { return sol.rho1(t).matrix(); };
  const auto spectra = spectrum_sweep(eval, ts, Execution::Serial);
  c.at_most("spectrum_drift", max_spectrum_drift(spectra, ref), o.tol, ctx);
  double tr = 0.0;
  for (double t : ts) tr = std::max(tr, std::abs(sol.rho1(t).trace() - 4.75));
  c.at_most("trace_drift", tr, o.tol, ctx);

  const auto rts = linspace(g.t_min, g.t_max, 21);
  const auto r1 = residual_sweep(eval, b.h, b.f, rts, o.fd_step, Execution::Serial);
  const auto r2 = residual_sweep(eval, b.h, b.f, rts, o.fd_step / 2, Execution::Serial);
  const double m1 = *std::max_element(r1.begin(), r1.end());
  const double m2 = *std::max_element(r2.begin(), r2.end());
  c.at_most("pde_residual", m1, 1e-5, ctx);
  c.at_least("pde_residual_halving_ratio", m1 / m2, 3.5, ctx);

  const double t0 = -10.0, t1 = 10.0;
  const auto end = integrate_to(sol.rho1(t0), b.h, b.f, t0, t1, o.dt);
  c.at_most("rk4_oracle", distance(end, sol.rho1(t1)), 1e-5, ctx);

  const double big_t = 20.0 / std::abs(omega_q(q, o.omega));
  const auto a = asymptotic_check(q, o.omega, big_t);
  c.at_most("xi_decay", a.xi_decay, 1e-7, ctx);
  c.at_most("zeta_limit", std::max(a.zeta_error_plus, a.zeta_error_minus), 1e-7, ctx);
  c.at_most("seed_return", a.seed_return, 1e-6, ctx);
  return c;
}

CheckList seed_file_checks(const Options& o, const TimeGrid& g) {
  CheckList c;
  const SeedBundle b = read_seed(load_key_values(o.seed));
  const SelfScatteringSolution sol(b);
  const auto ts = linspace(g.t_min, g.t_max, g.samples);
  const auto eval = [&](double t) { return sol.rho1(t).matrix(); };
  const auto ref = spectral_decompose(b.rho0).eigenvalues;
  c.at_most("spectrum_drift", max_spectrum_drift(spectrum_sweep(eval, ts, exec_of(o)), ref), o.tol);
  const Matrix d0 = dress_rho(b.rho0, b.h, make_projector(b.phi0, b.phi0), b.mu, std::conj(b.mu));
  c.at_most("dress_rho_at_0", distance(d0, sol.rho1(0.0)), o.tol);
  const auto res = residual_sweep(eval, b.h, b.f, linspace(g.t_min, g.t_max, 21), o.fd_step, exec_of(o));
  c.at_most("pde_residual", *std::max_element(res.begin(), res.end()), 1e-5);
  const double t0 = std::max(g.t_min, -10.0), t1 = std::min(g.t_max, 10.0);
  const auto end = integrate_to(sol.rho1(t0), b.h, b.f, t0, t1, o.dt);
  c.at_most("rk4_oracle", distance(end, sol.rho1(t1)), 1e-5);
  return c;
}

int cmd_verify(const Options& o, std::ostream& out) {
  CheckList all;
  ordered_json report;
  report["scenario"] = o.scenario;
  if (o.scenario == "three-level") {
    const auto qs = q_list(o, {-2.0, 0.5, 2.0});
    require_nonlinear(qs);
    if (!(o.omega > 0.0)) throw InputError("omega must be positive");
    const TimeGrid g = grid(o, -60.0, 60.0, 41);
    std::vector<CheckList> per_q(qs.size());
    for_each_index(qs.size(), [&](std::size_t i) { per_q[i] = three_level_checks(qs[i], o, g); },
                   exec_of(o));
    for (const auto& c : per_q) all.merge(c);
    report["q"] = qs;
    report["omega"] = o.omega;
  } else if (o.scenario == "infdim") {
    Options copy = o;
    if (!copy.k) copy.k = 4;
    const BlockSolution sol(block_model_of(copy));
    all.merge(infdim_checks(sol, 1e-8, o.fd_step, exec_of(o), nullptr));
  } else if (o.scenario == "seed") {
    if (o.seed.empty()) throw InputError("scenario 'seed' needs --seed <file>");
    all.merge(seed_file_checks(o, grid(o, -10.0, 10.0, 41)));
  } else {
    throw InputError("unknown scenario '" + o.scenario + "' (three-level, infdim, seed)");
  }
  report["checks"] = all.json();
  report["pass"] = all.all();
  Sink sink(o.out, out);
  sink.stream() << report.dump(2) << '\n';
  return all.all() ? kExitPass : kExitFail;
}

// ---------------------------------------------------------------- dress

int cmd_dress(const Options& o, std::ostream& out) {
  if (o.rho.empty() || o.hamiltonian.empty() || o.phi.empty() || o.mu.empty()) {
    throw InputError("dress needs --rho, --hamiltonian, --phi and --mu");
  }
  const HermitianOperator rho(load_matrix(o.rho));
  const HermitianOperator h(load_matrix(o.hamiltonian));
  if (rho.dim() != h.dim()) throw DimensionMismatch("rho and H differ in dimension");
  const StateVector phi = parse_vector(o.phi);
  const Complex mu = parse_complex(o.mu);
  const Complex nu = o.nu.empty() ? std::conj(mu) : parse_complex(o.nu);
  const StateVector chi = o.chi.empty() ? phi : parse_vector(o.chi);
  if (phi.dim() != rho.dim() || chi.dim() != rho.dim()) {
    throw DimensionMismatch("phi/chi dimension differs from rho");
  }
  LaxParameters params;
  params.lambda = mu + nu + 1.0;  // unused by the dressing; keeps validate() meaningful
  params.mu = mu;
  params.nu = nu;
  params.validate();
  const Projector p = make_projector(phi, chi);
  const DressedForms forms = dressing_forms(rho, h, p, mu, nu);

  ordered_json report;
  report["mu"] = format_complex(mu);
  report["nu"] = format_complex(nu);
  const Matrix pencil = rho.matrix() - mu * h.matrix();
  const Complex z = inner(phi, pencil * phi) / inner(phi, phi);
  report["z_mu"] = format_complex(z);
  report["phi_residual"] = (pencil * phi - z * phi).norm() / phi.norm();
  CheckList c;
  c.at_most("dual_form_mismatch", forms.mismatch, o.tol * std::max(1.0, rho.matrix().frobenius_norm()));
  const Matrix& rho1 = forms.additive;
  const double herm = distance(rho1, rho1.adjoint());
  report["hermiticity_defect"] = herm;
  if (herm <= 1e-9 * std::max(1.0, rho1.frobenius_norm())) {
    const auto s0 = spectral_decompose(rho).eigenvalues;
    const auto s1 = spectral_decompose(HermitianOperator::symmetrized(rho1)).eigenvalues;
    c.at_most("spectrum_drift", max_spectrum_drift({s1}, s0), o.tol);
  }
  report["rho1"] = matrix_json(rho1);
  report["checks"] = c.json();
  report["pass"] = c.all();
  Sink sink(o.out, out);
  sink.stream() << report.dump(2) << '\n';
  return c.all() ? kExitPass : kExitFail;
}

// ---------------------------------------------------------------- driver

void validate_common(const Options& o) {
  if (!(o.dt > 0.0)) throw InputError("dt must be positive");
  if (!(o.fd_step > 0.0)) throw InputError("fd-step must be positive");
  if (!(o.tol > 0.0)) throw InputError("tol must be positive");
  if (o.k && (*o.k == 0 || *o.k > kMaxBlocks)) {
    throw InputError("K must lie in [1, " + std::to_string(kMaxBlocks) + "]");
  }
  if (o.manifest && o.out.empty()) throw InputError("--manifest needs --out");
  for (double q : o.q)
    if (!std::isfinite(q)) throw InputError("q must be finite");
}

ordered_json config_echo(const Options& o) {
  ordered_json c;
  c["command"] = o.command;
  c["q"] = o.q;
  c["omega"] = o.omega;
  if (o.t_min) c["t_min"] = *o.t_min;
  if (o.t_max) c["t_max"] = *o.t_max;
  if (o.t_samples) c["t_samples"] = *o.t_samples;
  c["dt"] = o.dt;
  c["fd_step"] = o.fd_step;
  c["tol"] = o.tol;
  if (o.k) c["K"] = *o.k;
  c["out"] = o.out;
  c["level_shift"] = o.level_shift;
  c["scenario"] = o.scenario;
  c["seed"] = o.seed;
  c["x_min"] = o.x_min;
  c["x_max"] = o.x_max;
  c["x_samples"] = o.x_samples;
  c["alpha"] = o.alpha;
  c["beta"] = o.beta;
  c["serial"] = o.serial;
  return c;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Darboux dressing for the nonlinear von Neumann equation", "darboux"};
  app.set_config("--config", "", "flat key = value file; keys match flag names");
  app.require_subcommand(1, 1);

  app.add_option("--q", o.q, "exponent(s) q, comma separated")->delimiter(',');
  app.add_option("--omega", o.omega, "oscillator frequency");
  app.add_option("--t-min", o.t_min, "first time sample");
  app.add_option("--t-max", o.t_max, "last time sample");
  app.add_option("--t-samples", o.t_samples, "number of time samples");
  app.add_option("--dt", o.dt, "RK4 step");
  app.add_option("--fd-step", o.fd_step, "finite-difference step");
  app.add_option("--tol", o.tol, "equivalence / isospectrality tolerance");
  app.add_option("--K", o.k, "number of 2x2 blocks");
  app.add_option("--out", o.out, "output file (default stdout)");
  app.add_flag("--manifest", o.manifest, "write <out>.manifest.json with run metadata");
  app.add_option("--level-shift", o.level_shift, "place the three-level construction on levels k..k+2");
  app.add_option("--scenario", o.scenario, "verify scenario: three-level, infdim, seed");
  app.add_option("--seed", o.seed, "seed or block-model file");
  app.add_option("--x-min", o.x_min, "first position sample");
  app.add_option("--x-max", o.x_max, "last position sample");
  app.add_option("--x-samples", o.x_samples, "number of position samples");
  app.add_option("--alpha", o.alpha, "block Hamiltonian alpha");
  app.add_option("--beta", o.beta, "block Hamiltonian beta");
  app.add_option("--n-levels", o.n_levels, "oscillator levels used for <x>");
  app.add_option("--rho", o.rho, "matrix file for rho");
  app.add_option("--hamiltonian", o.hamiltonian, "matrix file for H");
  app.add_option("--phi", o.phi, "ket phi as complex entries");
  app.add_option("--chi", o.chi, "ket chi as complex entries (default phi)");
  app.add_option("--mu", o.mu, "spectral parameter mu");
  app.add_option("--nu", o.nu, "spectral parameter nu (default conj(mu))");
  app.add_flag("--serial", o.serial, "run sweeps on one thread");

  const std::map<std::string, std::function<int(const Options&, std::ostream&)>> commands{
      {"seed-check", cmd_seed_check}, {"figure1", cmd_figure1}, {"figure2", cmd_figure2},
      {"infdim", cmd_infdim},         {"verify", cmd_verify},   {"dress", cmd_dress}};
  const std::map<std::string, std::string> help{
      {"seed-check", "validate the seed conditions"},
      {"figure1", "<x>(t) table for several q"},
      {"figure2", "position density grid"},
      {"infdim", "block-diagonal dressed solution"},
      {"verify", "run residual, spectrum and oracle checks"},
      {"dress", "one-shot Darboux transform of user matrices"}};
  for (const auto& [name, fn] : commands) app.add_subcommand(name, help.at(name))->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitPass;
    }
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
  o.command = app.get_subcommands().front()->get_name();

  const auto start = std::chrono::steady_clock::now();
  int code = kExitInput;
  try {
    validate_common(o);
    code = commands.at(o.command)(o, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const StructureError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const DimensionMismatch& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const DegenerateProjector& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const Error& e) {
    err << "failed: " << e.what() << '\n';
    return kExitFail;
  }
  if (o.manifest) {
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    ordered_json m;
    m["version"] = DARBOUX_VERSION;
    m["config"] = config_echo(o);
    m["threads"] = o.serial ? 1 : max_threads();
    m["exit_code"] = code;
    m["wall_seconds"] = wall;
    write_json_file(o.out + ".manifest.json", m);
  }
  return code;
}

}  // namespace darboux::cli
