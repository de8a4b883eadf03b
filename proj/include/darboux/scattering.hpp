#pragma once

#include "darboux/hermitian.hpp"
#include "darboux/lax.hpp"
#include "darboux/seed.hpp"

namespace darboux {

/// [(4/7)^(1-q) - 1] omega / sqrt 3
double omega_q(double q, double omega);

/// xi(t), zeta(t) of the explicit three-level solution, evaluated in
/// overflow-free form (|omega_q t| > 300 returns the limits directly).
struct ScatteringProfile {
  double omega_q = 0.0;

  static ScatteringProfile make(double q, double omega) { return {darboux::omega_q(q, omega)}; }
  Complex xi(double t) const;
  Complex zeta(double t) const;
};

/// Interaction-picture matrix r(t):
///   [[3/2, -xi, zeta], [-conj(xi), 7/4, xi], [conj(zeta), conj(xi), 3/2]]
HermitianOperator rho_int_explicit(double q, double omega, double t);

/// e^{-iHt} r(t) e^{iHt} with H = omega diag(0, 1, 2).
HermitianOperator rho1_explicit(double q, double omega, double t);

/// Seed rho(t) = e^{-iHt} rho(0) e^{iHt} of the three-level example.
HermitianOperator seed_explicit(double omega, double t);

struct Rho1Evaluation {
  HermitianOperator rho1;
  double hermiticity_defect = 0.0;  // before symmetrization
};

/// Closed-form dressing of a seed satisfying f(rho) - a rho = Delta_a:
///   rho1(t) = e^{-iaHt} (rho0 + (mu - conj mu) F_a(t)^{-1}
///             e^{-i Delta_a t / mu} [|phi0><phi0|, H] e^{i Delta_a t / conj mu}) e^{iaHt}
///   F_a(t) = <phi0| exp(i (mu - conj mu)/|mu|^2 Delta_a t) |phi0>.
/// The exponentials are rescaled by their largest modulus, so F_a never
/// overflows; PoleError is raised if the rescaled F_a underflows.
class SelfScatteringSolution {
 public:
  explicit SelfScatteringSolution(SeedBundle bundle);

  const SeedBundle& bundle() const noexcept { return bundle_; }
  HermitianOperator rho1(double t) const { return evaluate(t).rho1; }
  Rho1Evaluation evaluate(double t) const;
  HermitianOperator seed(double t) const;
  /// Unscaled F_a(t); may overflow for large |t|.
  Complex scattering_amplitude(double t) const;
  /// Hermitian projector P(t) = |phi(t)><phi(t)| / <phi(t)|phi(t)>.
  Projector projector(double t) const;
  /// f(rho1(t)), the dressed A.
  HermitianOperator a1(double t) const;

 private:
  StateVector dressed_ket(double t) const;  // e^{-i Delta t/mu} phi0, rescaled

  SeedBundle bundle_;
  SpectralDecomposition h_spec_;
  SpectralDecomposition delta_spec_;
  StateVector phi_coeffs_;  // phi0 in the Delta_a eigenbasis
};

struct AsymptoticReport {
  double xi_decay = 0.0;          // max(|xi(T)|, |xi(-T)|)
  double zeta_error_plus = 0.0;   // |zeta(+T) - limit at +infinity|
  double zeta_error_minus = 0.0;  // |zeta(-T) - limit at -infinity|
  double seed_return = 0.0;       // ||rho1(sigma T) - rho(sigma T)||_F, sigma = sign(q - 1)
};

/// Limits: q > 1: zeta(+inf) = -1/2, zeta(-inf) = (1 - i sqrt 3)/4; mirrored for q < 1.
AsymptoticReport asymptotic_check(double q, double omega, double t);

}  // namespace darboux
