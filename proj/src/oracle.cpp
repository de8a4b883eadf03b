#include "darboux/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <istream>
#include <ostream>
#include <sstream>

#include "darboux/matrix_io.hpp"
#include "darboux/rk4.hpp"

namespace darboux {

namespace {

Matrix symmetrize(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

std::vector<double> moments(const Matrix& rho) {
  std::vector<double> out;
  Matrix p = rho;
  for (int k = 1; k <= 4; ++k) {
    out.push_back(p.trace().real());
    p = p * rho;
  }
  return out;
}

}  // namespace

Matrix von_neumann_rhs(const Matrix& rho, const HermitianOperator& h, const NonlinearityQ& f) {
  const HermitianOperator a = f.apply(HermitianOperator::symmetrized(rho));
  return Complex(0.0, -1.0) * commutator(h.matrix(), a.matrix());
}

Trajectory integrate_rk4(const HermitianOperator& rho0, const HermitianOperator& h,
                         const NonlinearityQ& f, double t_end, double dt,
                         const IntegrateOptions& opts) {
  if (!(dt > 0.0)) throw ParameterError("integrate_rk4: dt must be positive");
  if (rho0.dim() != h.dim()) throw DimensionMismatch("integrate_rk4: rho0 and H differ in size");
  if (opts.stride == 0) throw ParameterError("integrate_rk4: stride must be positive");
  const double span = t_end - opts.t0;
  const double steps_real = std::abs(span) / dt;
  const auto steps = static_cast<std::size_t>(std::llround(steps_real));
  if (std::abs(steps_real - static_cast<double>(steps)) > 1e-9 * std::max(1.0, steps_real)) {
    throw ParameterError("integrate_rk4: |t_end - t0| is not a multiple of dt");
  }
  const double signed_dt = span < 0.0 ? -dt : dt;

  Trajectory traj;
  traj.t0 = opts.t0;
  traj.dt = signed_dt * static_cast<double>(opts.stride);
  traj.times.push_back(opts.t0);
  traj.states.push_back(rho0);

  const auto rhs = [&](double, const Matrix& y) { return von_neumann_rhs(symmetrize(y), h, f); };
  Matrix y = rho0.matrix();
  for (std::size_t n = 1; n <= steps; ++n) {
    const double t = opts.t0 + static_cast<double>(n - 1) * signed_dt;
    try {
      y = symmetrize(rk4_step(rhs, t, y, signed_dt));
    } catch (const DomainError& e) {
      std::ostringstream os;
      os << "integrate_rk4: f left its domain near t = " << t << " (" << e.what() << ")";
      if (traj.times.back() != t) {
        traj.times.push_back(t);
        traj.states.push_back(HermitianOperator::symmetrized(y));
      }
      throw FlowDomainError(os.str(), std::move(traj));
    }
    if (!y.all_finite()) {
      throw FlowDomainError("integrate_rk4: state became non-finite", std::move(traj));
    }
    if (n % opts.stride == 0 || n == steps) {
      traj.times.push_back(opts.t0 + static_cast<double>(n) * signed_dt);
      traj.states.push_back(HermitianOperator::symmetrized(y));
    }
  }
  return traj;
}

HermitianOperator integrate_to(const HermitianOperator& rho0, const HermitianOperator& h,
                               const NonlinearityQ& f, double t0, double t_end, double dt) {
  IntegrateOptions opts;
  opts.t0 = t0;
  opts.stride = std::numeric_limits<std::size_t>::max();
  return integrate_rk4(rho0, h, f, t_end, dt, opts).back();
}

double residual_meter(const RhoOfT& rho_of_t, const HermitianOperator& h, const NonlinearityQ& f,
                      double t, double step) {
  if (!(step > 0.0)) throw ParameterError("residual_meter: step must be positive");
  const Matrix plus = rho_of_t(t + step);
  const Matrix minus = rho_of_t(t - step);
  const Matrix mid = rho_of_t(t);
  const Matrix lhs = Complex(0.0, 1.0 / (2.0 * step)) * (plus - minus);
  const HermitianOperator a = f.apply(HermitianOperator::symmetrized(mid));
  return (lhs - commutator(h.matrix(), a.matrix())).frobenius_norm();
}

ConservationReport conservation_report(const std::vector<Matrix>& states,
                                       const HermitianOperator* h, const NonlinearityQ* f) {
  if (states.empty()) throw ParameterError("conservation_report: empty trajectory");
  ConservationReport r;
  r.moment_drifts.assign(4, 0.0);
  const auto m0 = moments(states.front());
  const auto spec0 = spectral_decompose(HermitianOperator::symmetrized(states.front())).eigenvalues;
  double e0 = 0.0;
  const bool energy = h != nullptr && f != nullptr;
  if (energy) {
    e0 = (h->matrix() * f->apply(HermitianOperator::symmetrized(states.front())).matrix())
             .trace()
             .real();
    r.energy_drift = 0.0;
  }
  for (const Matrix& s : states) {
    r.max_hermiticity_defect =
        std::max(r.max_hermiticity_defect, (s - s.adjoint()).frobenius_norm());
    const auto m = moments(s);
    for (std::size_t k = 0; k < 4; ++k) {
      r.moment_drifts[k] = std::max(r.moment_drifts[k], std::abs(m[k] - m0[k]));
    }
    const HermitianOperator hs = HermitianOperator::symmetrized(s);
    const auto spec = spectral_decompose(hs).eigenvalues;
    for (std::size_t i = 0; i < spec.size(); ++i) {
      r.max_spectrum_drift = std::max(r.max_spectrum_drift, std::abs(spec[i] - spec0[i]));
    }
    if (energy) {
      const double e = (h->matrix() * f->apply(hs).matrix()).trace().real();
      r.energy_drift = std::max(*r.energy_drift, std::abs(e - e0));
    }
  }
  r.max_trace_drift = r.moment_drifts[0];
  return r;
}

ConservationReport conservation_report(const Trajectory& traj, const HermitianOperator* h,
                                       const NonlinearityQ* f) {
  std::vector<Matrix> raw;
  raw.reserve(traj.states.size());
  for (const auto& s : traj.states) raw.push_back(s.matrix());
  return conservation_report(raw, h, f);
}

void write_trajectory(std::ostream& os, const Trajectory& traj) {
  const std::size_t dim = traj.states.empty() ? 0 : traj.states.front().dim();
  os << "dt=" << format_real(traj.dt) << " t0=" << format_real(traj.t0) << " n=" << traj.size()
     << " dim=" << dim << '\n';
  for (std::size_t i = 0; i < traj.size(); ++i) {
    os << format_real(traj.times[i]) << '\n';
    write_matrix(os, traj.states[i].matrix());
  }
}

Trajectory read_trajectory(std::istream& is) {
  std::string header;
  if (!std::getline(is, header)) throw ParameterError("trajectory: missing header");
  Trajectory traj;
  std::size_t n = 0;
  std::size_t dim = 0;
  bool seen[4] = {false, false, false, false};
  std::istringstream hs(header);
  std::string tok;
  while (hs >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) throw ParameterError("trajectory: bad header token '" + tok + "'");
    const std::string key = tok.substr(0, eq);
    const std::string val = tok.substr(eq + 1);
    try {
      if (key == "dt") {
        traj.dt = std::stod(val);
        seen[0] = true;
      } else if (key == "t0") {
        traj.t0 = std::stod(val);
        seen[1] = true;
      } else if (key == "n") {
        n = std::stoul(val);
        seen[2] = true;
      } else if (key == "dim") {
        dim = std::stoul(val);
        seen[3] = true;
      } else {
        throw ParameterError("trajectory: unknown header key '" + key + "'");
      }
    } catch (const std::logic_error&) {
      throw ParameterError("trajectory: bad header value '" + tok + "'");
    }
  }
  if (!(seen[0] && seen[1] && seen[2] && seen[3])) {
    throw ParameterError("trajectory: header needs dt=, t0=, n=, dim=");
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::string line;
    while (std::getline(is, line) && line.find_first_not_of(" \t\r") == std::string::npos) {
    }
    if (!is) throw ParameterError("trajectory: truncated file");
    double t = 0.0;
    try {
      t = std::stod(line);
    } catch (const std::logic_error&) {
      throw ParameterError("trajectory: bad time line '" + line + "'");
    }
    Matrix m = read_matrix(is);
    if (m.dim() != dim) throw DimensionMismatch("trajectory: matrix size differs from header");
    traj.times.push_back(t);
    traj.states.emplace_back(m);
  }
  for (std::size_t i = 1; i < traj.times.size(); ++i) {
    const double step = traj.times[i] - traj.times[i - 1];
    if (std::abs(step - traj.dt) > 1e-14 * std::max(1.0, std::abs(traj.times[i]))) {
      // final sample may be short when a stride was used
      if (i + 1 != traj.times.size()) throw ParameterError("trajectory: non-uniform time grid");
    }
  }
  return traj;
}

}  // namespace darboux
