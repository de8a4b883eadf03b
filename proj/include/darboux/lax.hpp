#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "darboux/hermitian.hpp"
#include "darboux/matrix.hpp"
#include "darboux/nonlinearity.hpp"

namespace darboux {

/// Spectral parameters and eigenvalues of the three Lax pairs
///   z_lambda <psi| = <psi|(rho - lambda H),   -i <psi|' = (1/lambda) <psi| A
///   z_mu |phi>     = (rho - mu H) |phi>,       i |phi>'  = (1/mu) A |phi>
///   z_nu <chi|     = <chi|(rho - nu H),       -i <chi|'  = (1/nu) <chi| A
struct LaxParameters {
  Complex lambda{1.0, 0.0};
  Complex mu{0.0, 1.0};
  Complex nu{0.0, -1.0};
  Complex z_lambda{};
  Complex z_mu{};
  Complex z_nu{};

  /// Throws ParameterError if lambda, mu or nu vanish or lambda == mu.
  void validate() const;
};

/// P = |phi><chi| / <chi|phi>.
class Projector {
 public:
  const Matrix& matrix() const noexcept { return p_; }
  const StateVector& phi() const noexcept { return phi_; }
  /// Ket whose adjoint is the bra <chi|.
  const StateVector& chi() const noexcept { return chi_; }
  double idempotency_defect() const;

 private:
  friend Projector make_projector(const StateVector&, const StateVector&, double);
  Matrix p_;
  StateVector phi_;
  StateVector chi_;
};

/// Throws DegenerateProjector when |<chi|phi>| <= tol ||phi|| ||chi||.
Projector make_projector(const StateVector& phi, const StateVector& chi, double tol = 1e-12);

/// Everything a single binary Darboux step needs.
struct DressingBundle {
  LaxParameters params;
  Projector projector;
};

/// Hermitian reduction nu = conj(mu), chi = phi. Checks that phi solves the ket
/// spectral problem at z_mu (residual <= tol ||rho - mu H||_F) and sets
/// z_nu = conj(z_mu).
DressingBundle make_hermitian_bundle(const Matrix& rho, const Matrix& h, Complex mu,
                                     const StateVector& phi, Complex z_mu, double tol = 1e-10);

struct LaxResiduals {
  double spectral = 0.0;
  double temporal = 0.0;
};

/// Bra pair with <psi| stored by row components:
///   spectral = ||<psi|(rho - lambda H) - z_lambda <psi|||
///   temporal = ||-i <psi|' - (1/lambda) <psi| A||
LaxResiduals lax_residuals(const StateVector& psi, const Matrix& rho, const Matrix& h,
                           const LaxParameters& params, const Matrix& a,
                           const StateVector& psi_dot);

/// Ket pair at (mu, z_mu):
///   spectral = ||(rho - mu H)|phi> - z_mu |phi>||
///   temporal = ||i |phi>' - (1/mu) A |phi>||
LaxResiduals lax_residuals_ket(const StateVector& phi, const Matrix& rho, const Matrix& h,
                               Complex mu, Complex z_mu, const Matrix& a,
                               const StateVector& phi_dot);

/// Both dressing formulas for rho:
///   additive = rho + (mu - nu) [P, H]
///   product  = (1 + (mu - nu)/nu P) rho (1 + (nu - mu)/mu P)
struct DressedForms {
  Matrix additive;
  Matrix product;
  double mismatch = 0.0;  // ||additive - product||_F
};
DressedForms dressing_forms(const Matrix& rho, const Matrix& h, const Projector& p, Complex mu,
                            Complex nu);

/// rho + (mu - nu)[P, H]; throws InconsistencyError if the product form
/// disagrees by more than tol * max(||rho||_F, 1), which means P was not built
/// from genuine Lax solutions.
Matrix dress_rho(const Matrix& rho, const Matrix& h, const Projector& p, Complex mu, Complex nu,
                 double tol = 1e-9);

/// (1 + (mu - nu)/nu P) A (1 + (nu - mu)/mu P)
Matrix dress_A(const Matrix& a, const Projector& p, Complex mu, Complex nu);

/// dress_A applied to A = f(rho), checked against f(rho1) (the Lemma). Throws
/// InconsistencyError when ||A1 - f(rho1)||_F > tol * max(||A1||_F, 1).
Matrix dress_f(const HermitianOperator& rho, const NonlinearityQ& f, const Projector& p,
               Complex mu, Complex nu, const Matrix& rho1, double tol = 1e-8);

/// <psi_1| = <psi| (1 - (nu - mu)/(lambda - mu) P), bra by row components.
StateVector dress_bra(const StateVector& psi, const Projector& p, Complex lambda, Complex mu,
                      Complex nu);

/// max over interior samples of ||i P' - (1/mu)(1-P)AP + (1/nu)PA(1-P)||_F with
/// central-difference P'. Throws ParameterError for fewer than 3 samples.
double projector_evolution_residual(std::span<const Matrix> p_traj, std::span<const Matrix> a_traj,
                                    Complex mu, Complex nu, double h);

struct CompatibilityResiduals {
  double evolution = 0.0;  // max ||i rho' - [H, A]||_F over interior samples
  double commute = 0.0;    // max ||[A, rho]||_F over all samples
};
CompatibilityResiduals compatibility_residuals(std::span<const Matrix> rho_traj,
                                               std::span<const Matrix> a_traj, const Matrix& h,
                                               double step);

struct DressingStage {
  StateVector phi;
  StateVector chi;
  Complex mu;
  Complex nu;
};

/// [rho0, rho1, rho2, ...] at one instant; every stage runs the dual-form check.
std::vector<Matrix> iterate_dressing(std::span<const DressingStage> chain, const Matrix& rho0,
                                     const Matrix& h, double tol = 1e-9);

/// Ket Lax evolution i |phi>' = (1/mu) A(t) |phi> with fixed-step RK4.
StateVector evolve_ket_rk4(const StateVector& phi0, const std::function<Matrix(double)>& a_of_t,
                           Complex mu, double t0, double t1, double dt);

/// Closed form for time-independent A: exp(-i t A / mu) |phi0>.
StateVector evolve_ket_constant(const StateVector& phi0, const SpectralDecomposition& a, Complex mu,
                                double t);

/// Closed form for time-independent A, bra by row components:
/// <psi0| exp(i t A / lambda).
StateVector evolve_bra_constant(const StateVector& psi0, const SpectralDecomposition& a,
                                Complex lambda, double t);

}  // namespace darboux
