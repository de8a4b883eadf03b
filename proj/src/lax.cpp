#include "darboux/lax.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "darboux/errors.hpp"
#include "darboux/rk4.hpp"

namespace darboux {

void LaxParameters::validate() const {
  if (lambda == Complex{}) throw ParameterError("lambda must be nonzero");
  if (mu == Complex{}) throw ParameterError("mu must be nonzero");
  if (nu == Complex{}) throw ParameterError("nu must be nonzero");
  if (lambda == mu) throw ParameterError("lambda must differ from mu");
}

double Projector::idempotency_defect() const { return distance(p_ * p_, p_); }

Projector make_projector(const StateVector& phi, const StateVector& chi, double tol) {
  const Complex overlap = inner(chi, phi);
  const double scale = phi.norm() * chi.norm();
  if (!(std::abs(overlap) > tol * scale)) {
    std::ostringstream os;
    os << "<chi|phi> = " << overlap << " is degenerate (||phi|| ||chi|| = " << scale << ")";
    throw DegenerateProjector(os.str());
  }
  Projector p;
  p.phi_ = phi;
  p.chi_ = chi;
  p.p_ = (1.0 / overlap) * Matrix::outer(phi, chi);
  return p;
}

DressingBundle make_hermitian_bundle(const Matrix& rho, const Matrix& h, Complex mu,
                                     const StateVector& phi, Complex z_mu, double tol) {
  const Matrix pencil = rho - mu * h;
  const double res = (pencil * phi - z_mu * phi).norm();
  if (res > tol * std::max(pencil.frobenius_norm(), 1.0) * phi.norm()) {
    std::ostringstream os;
    os << "phi is not an eigenvector of rho - mu H at z_mu = " << z_mu << " (residual " << res
       << ")";
    throw InconsistencyError(os.str(), res);
  }
  DressingBundle b{.params = {}, .projector = make_projector(phi, phi)};
  b.params.mu = mu;
  b.params.nu = std::conj(mu);
  b.params.z_mu = z_mu;
  b.params.z_nu = std::conj(z_mu);
  return b;
}

LaxResiduals lax_residuals(const StateVector& psi, const Matrix& rho, const Matrix& h,
                           const LaxParameters& params, const Matrix& a,
                           const StateVector& psi_dot) {
  const Matrix pencil = rho - params.lambda * h;
  LaxResiduals r;
  r.spectral = (row_times(psi, pencil) - params.z_lambda * psi).norm();
  r.temporal =
      (Complex(0.0, -1.0) * psi_dot - (1.0 / params.lambda) * row_times(psi, a)).norm();
  return r;
}

LaxResiduals lax_residuals_ket(const StateVector& phi, const Matrix& rho, const Matrix& h,
                               Complex mu, Complex z_mu, const Matrix& a,
                               const StateVector& phi_dot) {
  const Matrix pencil = rho - mu * h;
  LaxResiduals r;
  r.spectral = (pencil * phi - z_mu * phi).norm();
  r.temporal = (Complex(0.0, 1.0) * phi_dot - (1.0 / mu) * (a * phi)).norm();
  return r;
}

DressedForms dressing_forms(const Matrix& rho, const Matrix& h, const Projector& p, Complex mu,
                            Complex nu) {
  const Matrix& pm = p.matrix();
  const Matrix id = Matrix::identity(rho.dim());
  DressedForms out;
  out.additive = rho + (mu - nu) * commutator(pm, h);
  out.product = (id + ((mu - nu) / nu) * pm) * rho * (id + ((nu - mu) / mu) * pm);
  out.mismatch = distance(out.additive, out.product);
  return out;
}

Matrix dress_rho(const Matrix& rho, const Matrix& h, const Projector& p, Complex mu, Complex nu,
                 double tol) {
  if (mu == Complex{} || nu == Complex{}) throw ParameterError("mu and nu must be nonzero");
  DressedForms forms = dressing_forms(rho, h, p, mu, nu);
  const double bound = tol * std::max(rho.frobenius_norm(), 1.0);
  if (forms.mismatch > bound) {
    std::ostringstream os;
    os << "additive and product dressing forms disagree by " << forms.mismatch
       << " (bound " << bound << "); P is not built from Lax solutions";
    throw InconsistencyError(os.str(), forms.mismatch);
  }
  return std::move(forms.additive);
}

Matrix dress_A(const Matrix& a, const Projector& p, Complex mu, Complex nu) {
  if (mu == Complex{} || nu == Complex{}) throw ParameterError("mu and nu must be nonzero");
  const Matrix& pm = p.matrix();
  const Matrix id = Matrix::identity(a.dim());
  return (id + ((mu - nu) / nu) * pm) * a * (id + ((nu - mu) / mu) * pm);
}

Matrix dress_f(const HermitianOperator& rho, const NonlinearityQ& f, const Projector& p,
               Complex mu, Complex nu, const Matrix& rho1, double tol) {
  Matrix a1 = dress_A(f.apply(rho).matrix(), p, mu, nu);
  const Matrix f_rho1 = f.apply(HermitianOperator::symmetrized(rho1)).matrix();
  const double mismatch = distance(a1, f_rho1);
  if (mismatch > tol * std::max(a1.frobenius_norm(), 1.0)) {
    std::ostringstream os;
    os << "dressed f(rho) differs from f(rho1) by " << mismatch;
    throw InconsistencyError(os.str(), mismatch);
  }
  return a1;
}

StateVector dress_bra(const StateVector& psi, const Projector& p, Complex lambda, Complex mu,
                      Complex nu) {
  if (lambda == mu) throw ParameterError("dress_bra: lambda must differ from mu");
  const Complex k = (nu - mu) / (lambda - mu);
  return psi - k * row_times(psi, p.matrix());
}

double projector_evolution_residual(std::span<const Matrix> p_traj, std::span<const Matrix> a_traj,
                                    Complex mu, Complex nu, double h) {
  if (p_traj.size() < 3) throw ParameterError("projector trajectory needs at least 3 samples");
  if (a_traj.size() != p_traj.size()) throw DimensionMismatch("P and A trajectories differ in length");
  const Matrix id = Matrix::identity(p_traj[0].dim());
  double worst = 0.0;
  for (std::size_t k = 1; k + 1 < p_traj.size(); ++k) {
    const Matrix& p = p_traj[k];
    const Matrix& a = a_traj[k];
    const Matrix dp = (1.0 / (2.0 * h)) * (p_traj[k + 1] - p_traj[k - 1]);
    const Matrix q = id - p;
    const Matrix r = Complex(0.0, 1.0) * dp - (1.0 / mu) * (q * a * p) + (1.0 / nu) * (p * a * q);
    worst = std::max(worst, r.frobenius_norm());
  }
  return worst;
}

CompatibilityResiduals compatibility_residuals(std::span<const Matrix> rho_traj,
                                               std::span<const Matrix> a_traj, const Matrix& h,
                                               double step) {
  if (a_traj.size() != rho_traj.size()) {
    throw DimensionMismatch("rho and A trajectories differ in length");
  }
  CompatibilityResiduals r;
  for (std::size_t k = 0; k < rho_traj.size(); ++k) {
    r.commute = std::max(r.commute, commutator(a_traj[k], rho_traj[k]).frobenius_norm());
    if (k == 0 || k + 1 == rho_traj.size()) continue;
    const Matrix drho = (1.0 / (2.0 * step)) * (rho_traj[k + 1] - rho_traj[k - 1]);
    const Matrix res = Complex(0.0, 1.0) * drho - commutator(h, a_traj[k]);
    r.evolution = std::max(r.evolution, res.frobenius_norm());
  }
  return r;
}

std::vector<Matrix> iterate_dressing(std::span<const DressingStage> chain, const Matrix& rho0,
                                     const Matrix& h, double tol) {
  std::vector<Matrix> out{rho0};
  for (const auto& stage : chain) {
    const Projector p = make_projector(stage.phi, stage.chi);
    out.push_back(dress_rho(out.back(), h, p, stage.mu, stage.nu, tol));
  }
  return out;
}

StateVector evolve_ket_rk4(const StateVector& phi0, const std::function<Matrix(double)>& a_of_t,
                           Complex mu, double t0, double t1, double dt) {
  if (!(dt > 0.0)) throw ParameterError("dt must be positive");
  const double span = t1 - t0;
  const auto steps = static_cast<std::size_t>(std::ceil(std::abs(span) / dt - 1e-9));
  if (steps == 0) return phi0;
  const double step = span / static_cast<double>(steps);
  const Complex coeff = Complex(0.0, -1.0) / mu;
  auto rhs = [&](double t, const StateVector& y) { return coeff * (a_of_t(t) * y); };
  StateVector y = phi0;
  for (std::size_t k = 0; k < steps; ++k) {
    y = rk4_step(rhs, t0 + static_cast<double>(k) * step, y, step);
  }
  return y;
}

StateVector evolve_ket_constant(const StateVector& phi0, const SpectralDecomposition& a, Complex mu,
                                double t) {
  return spectral_exp(a, Complex(0.0, -t) / mu) * phi0;
}

StateVector evolve_bra_constant(const StateVector& psi0, const SpectralDecomposition& a,
                                Complex lambda, double t) {
  return row_times(psi0, spectral_exp(a, Complex(0.0, t) / lambda));
}

}  // namespace darboux
